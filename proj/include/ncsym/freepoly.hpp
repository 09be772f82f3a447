#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ncsym/mat.hpp"
#include "ncsym/ncfun.hpp"

namespace ncsym {

/// Word in noncommuting letters 0..d-1; the empty word is the unit.
using Word = std::vector<std::uint8_t>;

/// Length first, then lexicographic.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Complex-coefficient element of the free algebra on d letters, kept in canonical form
/// (no stored zero coefficients, terms ordered by WordLess).
class FreePoly {
public:
    using Terms = std::map<Word, Scalar, WordLess>;

    explicit FreePoly(int d = 2);

    static FreePoly constant(int d, Scalar c);
    static FreePoly letter(int d, int index);
    static FreePoly monomial(int d, Word w, Scalar c = 1.0);

    /// Parses the text grammar: '+'/'-' separated terms, each an optional coefficient
    /// (real literal or "(re,im)") followed by '*'-separated letters z, w or x0..x9.
    /// `d = 0` infers the arity (z/w imply d >= 2). Throws ParseError with line/column.
    static FreePoly parse(std::string_view text, int d = 0);

    int arity() const noexcept { return d_; }
    /// Maximum word length; -1 for the zero polynomial.
    int degree() const noexcept;
    bool is_zero() const noexcept { return terms_.empty(); }
    const Terms& terms() const noexcept { return terms_; }
    Scalar coefficient(const Word& w) const;

    /// Same polynomial viewed over d' >= arity() letters.
    FreePoly with_arity(int d) const;

    FreePoly& operator+=(const FreePoly& other);
    FreePoly& operator-=(const FreePoly& other);
    FreePoly& operator*=(Scalar c);
    friend FreePoly operator+(FreePoly a, const FreePoly& b) { return a += b; }
    friend FreePoly operator-(FreePoly a, const FreePoly& b) { return a -= b; }
    friend FreePoly operator*(FreePoly a, Scalar c) { return a *= c; }
    friend FreePoly operator*(Scalar c, FreePoly a) { return a *= c; }
    friend FreePoly operator*(const FreePoly& a, const FreePoly& b);
    bool operator==(const FreePoly& other) const { return d_ == other.d_ && terms_ == other.terms_; }

    /// Letter exchange z <-> w; d == 2 only.
    FreePoly swap() const;
    bool is_symmetric() const;

    /// Sum of coeff * X^{w}; the empty word contributes coeff * 1_n.
    CMatrix eval(const GradedPoint& x) const;

    /// Renders in the parse grammar (z/w for d == 2, x0.. otherwise).
    std::string to_string() const;

private:
    void add_term(const Word& w, Scalar c);

    int d_;
    Terms terms_;
};

/// Ordered product of generators, identified by their indices; empty = unit.
struct GeneratorProduct {
    std::vector<int> factors;
    Scalar coefficient;
};

struct Expressibility {
    bool expressible = false;
    /// Euclidean norm of the least-squares coefficient residual.
    double residual = 0.0;
    std::vector<GeneratorProduct> decomposition;

    /// Rebuilds sum coefficient * product from the generator list.
    FreePoly reconstruct(const std::vector<FreePoly>& generators, int d) const;
};

inline constexpr double kExpressibilityThreshold = 1e-9;

/// Decides whether `target` is a linear combination of ordered generator products of total
/// degree <= degree_bound. Infeasible answers carry the least-squares residual as witness.
Expressibility expressibility(const FreePoly& target, const std::vector<FreePoly>& generators, int degree_bound);

/// One representative w + swap(w) per swap orbit of words of exactly `degree` letters (d = 2).
std::vector<FreePoly> symmetric_word_basis(int degree);

}  // namespace ncsym
