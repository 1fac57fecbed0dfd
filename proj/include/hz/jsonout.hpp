#ifndef HZ_JSONOUT_HPP
#define HZ_JSONOUT_HPP

#include <cstdio>
#include <string>
#include <vector>

#include "hz/common.hpp"

namespace hz {

// Deterministic JSON writer: fields appear in insertion order and floats are
// rendered with %.15g, so identical runs emit identical bytes.
class JsonWriter {
public:
    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(const std::string& name) {
        separator();
        append_string(name);
        out_ += ':';
        fresh_ = true;
        return *this;
    }

    JsonWriter& value(double v) {
        separator();
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.15g", v);
        out_ += buf;
        return *this;
    }
    JsonWriter& value(int v) { return value_raw(std::to_string(v)); }
    JsonWriter& value(long v) { return value_raw(std::to_string(v)); }
    JsonWriter& value(uint64_t v) { return value_raw(std::to_string(v)); }
    JsonWriter& value(bool v) { return value_raw(v ? "true" : "false"); }
    JsonWriter& value(const std::string& v) {
        separator();
        append_string(v);
        return *this;
    }
    JsonWriter& value(const char* v) { return value(std::string(v)); }

    JsonWriter& value(Complex z) {
        begin_object();
        key("re").value(z.real());
        key("im").value(z.imag());
        return end_object();
    }

    // hex floats round-trip exactly; used where replay must be bit-stable
    JsonWriter& value_hex(double v) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%a", v);
        separator();
        append_string(buf);
        return *this;
    }

    const std::string& str() const { return out_; }

private:
    JsonWriter& open(char c) {
        separator();
        out_ += c;
        fresh_ = true;
        return *this;
    }
    JsonWriter& close(char c) {
        out_ += c;
        fresh_ = false;
        return *this;
    }
    JsonWriter& value_raw(const std::string& s) {
        separator();
        out_ += s;
        return *this;
    }
    void separator() {
        if (!fresh_ && !out_.empty()) {
            char last = out_.back();
            if (last != '{' && last != '[' && last != ':') out_ += ',';
        }
        fresh_ = false;
    }
    void append_string(const std::string& s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    bool fresh_ = true;
};

} // namespace hz

#endif
