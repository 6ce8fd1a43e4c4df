#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace rtglab {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Complex number with exact rational real and imaginary parts. All subspace
// solves in the library run over this field; nothing is ever rounded.
struct CRat {
    Rat re{0};
    Rat im{0};

    CRat() = default;
    CRat(Rat r) : re(std::move(r)) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    CRat(long long r) : re(r) {}
    CRat(long long num, long long den) : re(Rat(num, den)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CRat operator/(const CRat& a, const CRat& b) {
        Rat d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    CRat& operator+=(const CRat& o) { re += o.re; im += o.im; return *this; }
    CRat& operator-=(const CRat& o) { re -= o.re; im -= o.im; return *this; }
    CRat& operator*=(const CRat& o) { *this = *this * o; return *this; }

    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

    CRat conj() const { return {re, -im}; }

    double to_double_abs() const {
        double r = static_cast<double>(re);
        double i = static_cast<double>(im);
        return std::sqrt(r * r + i * i);
    }

    std::string str() const {
        std::string s = re.str();
        if (im != 0) s += (im > 0 ? "+" : "") + im.str() + "i";
        return s;
    }
};

inline CRat crat(long long num, long long den = 1) { return CRat(Rat(num, den)); }

} // namespace rtglab
