#include "stieltjes/interval_set.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "stieltjes/errors.hpp"

namespace stieltjes {

bool Interval::contains(double t) const {
    if (t < lo || t > hi) return false;
    if (t == lo && !lo_closed) return false;
    if (t == hi && !hi_closed) return false;
    return true;
}

bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed;
}

bool operator==(const IntervalSet& a, const IntervalSet& b) { return a.parts() == b.parts(); }

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

IntervalSet IntervalSet::half_open(double x, double y) {
    IntervalSet s;
    s.add_interval(x, y);
    return s;
}

IntervalSet& IntervalSet::add(const Interval& part) {
    parts_.push_back(part);
    normalize();
    return *this;
}

bool IntervalSet::contains(double t) const {
    return std::any_of(parts_.begin(), parts_.end(), [t](const Interval& p) { return p.contains(t); });
}

void IntervalSet::normalize() {
    std::erase_if(parts_, [](const Interval& p) { return p.empty(); });
    std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.lo_closed && !b.lo_closed;
    });
    std::vector<Interval> merged;
    for (const Interval& p : parts_) {
        if (!merged.empty()) {
            Interval& m = merged.back();
            bool touches = p.lo < m.hi || (p.lo == m.hi && (m.hi_closed || p.lo_closed));
            if (touches) {
                if (p.lo == m.lo) m.lo_closed = m.lo_closed || p.lo_closed;
                if (p.hi > m.hi) {
                    m.hi = p.hi;
                    m.hi_closed = p.hi_closed;
                } else if (p.hi == m.hi) {
                    m.hi_closed = m.hi_closed || p.hi_closed;
                }
                continue;
            }
        }
        merged.push_back(p);
    }
    parts_ = std::move(merged);
}

IntervalSet IntervalSet::united(const IntervalSet& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersected(const IntervalSet& other) const {
    std::vector<Interval> out;
    for (const Interval& p : parts_) {
        for (const Interval& q : other.parts_) {
            Interval r;
            if (p.lo > q.lo) {
                r.lo = p.lo;
                r.lo_closed = p.lo_closed;
            } else if (q.lo > p.lo) {
                r.lo = q.lo;
                r.lo_closed = q.lo_closed;
            } else {
                r.lo = p.lo;
                r.lo_closed = p.lo_closed && q.lo_closed;
            }
            if (p.hi < q.hi) {
                r.hi = p.hi;
                r.hi_closed = p.hi_closed;
            } else if (q.hi < p.hi) {
                r.hi = q.hi;
                r.hi_closed = q.hi_closed;
            } else {
                r.hi = p.hi;
                r.hi_closed = p.hi_closed && q.hi_closed;
            }
            if (!r.empty()) out.push_back(r);
        }
    }
    return IntervalSet(std::move(out));
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // drop negative zero
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string IntervalSet::to_string() const {
    if (parts_.empty()) return "{}";
    std::string out;
    for (const Interval& p : parts_) {
        if (!out.empty()) out += ", ";
        if (p.is_point()) {
            out += "{" + format_number(p.lo) + "}";
        } else {
            out += p.lo_closed ? "[" : "(";
            out += format_number(p.lo) + "," + format_number(p.hi);
            out += p.hi_closed ? "]" : ")";
        }
    }
    return out;
}

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    char take() {
        char c = peek();
        if (c != '\0') ++pos_;
        return c;
    }
    void expect(char c) {
        if (take() != c) fail(std::string("expected '") + c + "'");
    }
    double number() {
        skip_ws();
        std::string tmp(s_.substr(pos_));
        char* end = nullptr;
        double v = std::strtod(tmp.c_str(), &end);
        if (end == tmp.c_str() || !std::isfinite(v)) fail("expected a finite number");
        pos_ += static_cast<std::size_t>(end - tmp.c_str());
        return v;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::MalformedSpec,
                    "interval set literal, column " + std::to_string(pos_ + 1) + ": " + msg);
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

IntervalSet parse_interval_set(std::string_view text) {
    Cursor c(text);
    std::vector<Interval> parts;
    if (c.done()) return {};
    if (c.peek() == '{' ) {
        // allow the empty set literal "{}"
        Cursor probe = c;
        probe.take();
        if (probe.peek() == '}') {
            probe.take();
            if (probe.done()) return {};
        }
    }
    while (true) {
        char open = c.take();
        if (open == '{') {
            double t = c.number();
            c.expect('}');
            parts.push_back(Interval::point(t));
        } else if (open == '[' || open == '(') {
            double x = c.number();
            c.expect(',');
            double y = c.number();
            char close = c.take();
            if (close != ')' && close != ']') c.fail("expected ')' or ']'");
            if (!(x < y)) c.fail("interval requires lower < upper");
            parts.push_back({x, y, open == '[', close == ']'});
        } else {
            c.fail("expected '[', '(' or '{'");
        }
        if (c.done()) break;
        c.expect(',');
    }
    return IntervalSet(std::move(parts));
}

}  // namespace stieltjes
