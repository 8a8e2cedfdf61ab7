#pragma once

// Minimal deterministic JSON emitter. Callers emit keys in sorted order;
// floats are printed with 17 significant digits so output is stable and
// round-trips doubles exactly.

#include "gharm/quadext.hpp"
#include "gharm/rational.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace gharm {

inline std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

inline std::string json_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class JsonWriter {
public:
    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    JsonWriter& key(std::string_view k) {
        comma();
        out_ += '"';
        out_ += json_escape(k);
        out_ += "\":";
        pending_value_ = true;
        return *this;
    }

    void value(std::string_view s) {
        comma();
        out_ += '"';
        out_ += json_escape(s);
        out_ += '"';
    }
    void value(const char* s) { value(std::string_view(s)); }
    void value(double v) {
        comma();
        out_ += json_double(v);
    }
    void value(long long v) {
        comma();
        out_ += std::to_string(v);
    }
    void value(int v) { value(static_cast<long long>(v)); }
    void value(bool v) {
        comma();
        out_ += v ? "true" : "false";
    }
    void value_null() {
        comma();
        out_ += "null";
    }
    void value(const Rational& r) { value(r.str()); }
    void value(const BigInt& n) { value(n.str()); }

    // Rational-collapsed values serialize as plain "num/den" strings,
    // genuinely irrational ones as {"a","b","m"}.
    void value(const QuadExt& x) {
        if (x.is_rational()) {
            value(x.rational());
            return;
        }
        begin_object();
        key("a").value(x.a());
        key("b").value(x.b());
        key("m").value(x.radicand());
        end_object();
    }

    const std::string& str() const { return out_; }

private:
    void open(char c) {
        comma();
        out_ += c;
        first_.push_back(true);
    }
    void close(char c) {
        out_ += c;
        first_.pop_back();
    }
    void comma() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back()) out_ += ',';
            first_.back() = false;
        }
    }

    std::string out_;
    std::vector<bool> first_;
    bool pending_value_ = false;
};

} // namespace gharm
