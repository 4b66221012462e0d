// Exact rational scalars and small vector helpers used throughout.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

#include "tropjac/error.hpp"

namespace tropjac {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;
using Vec = std::vector<Rat>;
using IVec = std::vector<Int>;

inline Int rat_num(const Rat& x) { return Int(boost::multiprecision::numerator(x)); }
inline Int rat_den(const Rat& x) { return Int(boost::multiprecision::denominator(x)); }

/** Largest integer <= x. */
inline Int rat_floor(const Rat& x) {
    Int n = rat_num(x), d = rat_den(x);
    Int q = n / d; // truncates toward zero
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

/** Fractional part in [0,1). */
inline Int rat_ceil(const Rat& x) { return -rat_floor(-x); }

inline Rat rat_frac(const Rat& x) { return x - Rat(rat_floor(x)); }

inline bool rat_is_int(const Rat& x) { return rat_den(x) == 1; }

inline double rat_to_double(const Rat& x) { return x.convert_to<double>(); }

/** Parses "p/q" or "p"; numerator and denominator go through mpz and are
 *  recombined by division, because the mpq string constructor neither
 *  canonicalizes nor rejects a zero denominator. */
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw InvalidInput("empty rational literal");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
            throw InvalidInput("bad rational literal: " + s);
    try {
        size_t slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw InvalidInput("zero denominator in rational literal: " + s);
        return Rat(num, den);
    } catch (const InvalidInput&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidInput("bad rational literal: " + s);
    }
}

/** Canonical "p/q" (or "p" for integers) rendering. */
inline std::string format_rat(const Rat& x) {
    std::string n = rat_num(x).str();
    if (rat_den(x) == 1) return n;
    return n + "/" + rat_den(x).str();
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec vec_scale(const Vec& a, const Rat& s) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

inline Rat vec_dot(const Vec& a, const Vec& b) {
    Rat r = 0;
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline bool vec_is_zero(const Vec& a) {
    for (const Rat& x : a)
        if (x != 0) return false;
    return true;
}

/** Lexicographic exact comparison; -1, 0, 1. */
inline int vec_cmp(const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

struct VecLess {
    bool operator()(const Vec& a, const Vec& b) const { return vec_cmp(a, b) < 0; }
};

/** Componentwise fractional part: the canonical torus representative in [0,1)^b. */
inline Vec torus_reduce(const Vec& x) {
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = rat_frac(x[i]);
    return r;
}

/** True when x - y is an integer vector. */
inline bool torus_equal(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
        if (!rat_is_int(x[i] - y[i])) return false;
    return true;
}

inline std::string format_vec(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_rat(v[i]);
    }
    return s + ")";
}

} // namespace tropjac
