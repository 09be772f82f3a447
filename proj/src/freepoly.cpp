#include "ncsym/freepoly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

namespace ncsym {

FreePoly::FreePoly(int d) : d_(d) {
    if (d < 1 || d > 10) throw InvalidInput("FreePoly: arity must lie in 1..10");
}

FreePoly FreePoly::constant(int d, Scalar c) { return monomial(d, {}, c); }

FreePoly FreePoly::letter(int d, int index) {
    if (index < 0 || index >= d) throw InvalidInput("FreePoly::letter: index out of range");
    return monomial(d, Word{static_cast<std::uint8_t>(index)});
}

FreePoly FreePoly::monomial(int d, Word w, Scalar c) {
    FreePoly p(d);
    for (auto l : w)
        if (l >= d) throw InvalidInput("FreePoly::monomial: letter out of range");
    p.add_term(w, c);
    return p;
}

void FreePoly::add_term(const Word& w, Scalar c) {
    if (c == Scalar(0.0)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Scalar(0.0)) terms_.erase(it);
    }
}

int FreePoly::degree() const noexcept {
    return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
}

Scalar FreePoly::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar(0.0) : it->second;
}

FreePoly FreePoly::with_arity(int d) const {
    if (d < d_) throw InvalidInput("with_arity: cannot drop letters");
    FreePoly out(d);
    out.terms_ = terms_;
    return out;
}

FreePoly& FreePoly::operator+=(const FreePoly& other) {
    if (d_ != other.d_) throw InvalidInput("FreePoly: arity mismatch");
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
}

FreePoly& FreePoly::operator-=(const FreePoly& other) {
    if (d_ != other.d_) throw InvalidInput("FreePoly: arity mismatch");
    for (const auto& [w, c] : other.terms_) add_term(w, -c);
    return *this;
}

FreePoly& FreePoly::operator*=(Scalar c) {
    if (c == Scalar(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_) coeff *= c;
    std::erase_if(terms_, [](const auto& kv) { return kv.second == Scalar(0.0); });
    return *this;
}

FreePoly operator*(const FreePoly& a, const FreePoly& b) {
    if (a.d_ != b.d_) throw InvalidInput("FreePoly: arity mismatch");
    FreePoly out(a.d_);
    for (const auto& [wa, ca] : a.terms_) {
        for (const auto& [wb, cb] : b.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add_term(w, ca * cb);
        }
    }
    return out;
}

FreePoly FreePoly::swap() const {
    if (d_ != 2) throw InvalidInput("swap: defined for two letters only");
    FreePoly out(2);
    for (const auto& [w, c] : terms_) {
        Word s = w;
        for (auto& l : s) l = static_cast<std::uint8_t>(1 - l);
        out.add_term(s, c);
    }
    return out;
}

bool FreePoly::is_symmetric() const { return swap() == *this; }

CMatrix FreePoly::eval(const GradedPoint& x) const {
    if (static_cast<int>(x.arity()) != d_) throw InvalidInput("FreePoly::eval: arity mismatch");
    const Eigen::Index n = x.level();
    CMatrix acc = CMatrix::Zero(n, n);
    for (const auto& [w, c] : terms_) {
        if (w.empty()) {
            acc.diagonal().array() += c;
            continue;
        }
        CMatrix prod = x[w.front()];
        for (std::size_t k = 1; k < w.size(); ++k) prod = prod * x[w[k]];
        acc += c * prod;
    }
    return acc;
}

namespace {

// shortest representation that round-trips
std::string format_real(double v) {
    std::ostringstream os;
    for (int p = 1; p <= 17; ++p) {
        os.str("");
        os.precision(p);
        os << v;
        if (std::stod(os.str()) == v) break;
    }
    return os.str();
}

std::string letter_name(int d, std::uint8_t l) {
    if (d == 2) return l == 0 ? "z" : "w";
    return "x" + std::to_string(static_cast<int>(l));
}

}  // namespace

std::string FreePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        std::string coeff;
        bool negative = false;
        if (c.imag() == 0.0) {
            double re = c.real();
            if (re < 0.0) {
                negative = true;
                re = -re;
            }
            if (re != 1.0 || w.empty()) coeff = format_real(re);
        } else {
            coeff = "(" + format_real(c.real()) + "," + format_real(c.imag()) + ")";
        }
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        std::string letters;
        for (std::size_t k = 0; k < w.size(); ++k) letters += (k ? "*" : "") + letter_name(d_, w[k]);
        if (!coeff.empty() && !letters.empty())
            out += coeff + "*" + letters;
        else
            out += coeff + letters;
    }
    return out;
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    FreePoly run(int d) {
        skip_ws();
        if (at_end()) fail("empty polynomial");
        struct Term {
            Scalar c;
            Word w;
        };
        std::vector<Term> terms;
        int max_letter = -1;
        bool uses_zw = false;
        bool first = true;
        while (true) {
            skip_ws();
            double sign = 1.0;
            if (consume_sign(sign)) {
                skip_ws();
            } else if (!first) {
                break;
            }
            first = false;
            Term t{Scalar(sign), {}};
            parse_term(t.c, t.w, max_letter, uses_zw);
            terms.push_back(std::move(t));
            skip_ws();
            if (at_end()) break;
            if (!peek_sign()) fail("expected '+' or '-'");
        }
        skip_ws();
        if (!at_end()) fail("unexpected character");
        int arity = d;
        const int needed = std::max(uses_zw ? 2 : 1, max_letter + 1);
        if (arity == 0) arity = needed;
        if (arity < needed) throw ParseError("letter index exceeds declared arity", 1, 1);
        FreePoly p(arity);
        for (const auto& t : terms) p += FreePoly::monomial(arity, t.w, t.c);
        return p;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void advance(std::size_t k = 1) {
        for (std::size_t i = 0; i < k && pos_ < text_.size(); ++i) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
                ++col_;
            }
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    void skip_ws() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) advance();
    }

    bool is_unicode_minus() const {
        return text_.substr(pos_, 3) == "\xE2\x88\x92";
    }

    bool peek_sign() const { return peek() == '+' || peek() == '-' || is_unicode_minus(); }

    bool consume_sign(double& sign) {
        if (peek() == '+') {
            advance();
            return true;
        }
        if (peek() == '-') {
            sign = -1.0;
            advance();
            return true;
        }
        if (is_unicode_minus()) {
            sign = -1.0;
            advance(3);
            return true;
        }
        return false;
    }

    double parse_number() {
        const std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') advance();
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) advance();
        if (peek() == 'e' || peek() == 'E') {
            advance();
            if (peek() == '-' || peek() == '+') advance();
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        double v = 0.0;
        const char* b = text_.data() + start;
        const char* e = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || ptr != e || b == e) fail("malformed number");
        return v;
    }

    bool parse_coefficient(Scalar& c) {
        if (peek() == '(') {
            advance();
            skip_ws();
            const double re = parse_number();
            skip_ws();
            if (peek() != ',') fail("expected ',' in complex coefficient");
            advance();
            skip_ws();
            const double im = parse_number();
            skip_ws();
            if (peek() != ')') fail("expected ')' closing complex coefficient");
            advance();
            c *= Scalar(re, im);
            return true;
        }
        if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
            c *= parse_number();
            return true;
        }
        return false;
    }

    bool parse_letter(Word& w, int& max_letter, bool& uses_zw) {
        if (peek() == 'z' || peek() == 'w') {
            w.push_back(peek() == 'z' ? 0 : 1);
            uses_zw = true;
            max_letter = std::max(max_letter, static_cast<int>(w.back()));
            advance();
            return true;
        }
        if (peek() == 'x') {
            advance();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digit after 'x'");
            const int idx = peek() - '0';
            advance();
            if (std::isdigit(static_cast<unsigned char>(peek()))) fail("letter index must be a single digit");
            w.push_back(static_cast<std::uint8_t>(idx));
            max_letter = std::max(max_letter, idx);
            return true;
        }
        return false;
    }

    void parse_term(Scalar& c, Word& w, int& max_letter, bool& uses_zw) {
        const bool had_coeff = parse_coefficient(c);
        skip_ws();
        if (had_coeff) {
            if (peek() != '*') return;
            advance();
            skip_ws();
            if (!parse_letter(w, max_letter, uses_zw)) fail("expected a letter after '*'");
        } else if (!parse_letter(w, max_letter, uses_zw)) {
            fail("expected a coefficient or a letter");
        }
        while (true) {
            skip_ws();
            if (peek() != '*') return;
            advance();
            skip_ws();
            if (!parse_letter(w, max_letter, uses_zw)) fail("expected a letter after '*'");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

FreePoly FreePoly::parse(std::string_view text, int d) { return PolyParser(text).run(d); }

FreePoly Expressibility::reconstruct(const std::vector<FreePoly>& generators, int d) const {
    FreePoly out(d);
    for (const auto& term : decomposition) {
        FreePoly prod = FreePoly::constant(d, 1.0);
        for (int g : term.factors) prod = prod * generators.at(g).with_arity(d);
        out += term.coefficient * prod;
    }
    return out;
}

Expressibility expressibility(const FreePoly& target, const std::vector<FreePoly>& generators, int degree_bound) {
    if (degree_bound < target.degree())
        throw InvalidInput("expressibility: degree bound below the target degree");
    for (const auto& g : generators) {
        if (g.degree() < 1) throw InvalidInput("expressibility: generators must have degree >= 1");
        if (g.arity() != target.arity()) throw InvalidInput("expressibility: arity mismatch");
    }
    const int d = target.arity();

    // every ordered product with total generator degree <= bound, in DFS order
    std::vector<std::vector<int>> products;
    std::vector<FreePoly> expansions;
    std::vector<int> stack;
    std::function<void(const FreePoly&, int)> grow = [&](const FreePoly& current, int deg) {
        products.push_back(stack);
        expansions.push_back(current);
        for (std::size_t g = 0; g < generators.size(); ++g) {
            const int gd = generators[g].degree();
            if (deg + gd > degree_bound) continue;
            stack.push_back(static_cast<int>(g));
            grow(current * generators[g], deg + gd);
            stack.pop_back();
        }
    };
    grow(FreePoly::constant(d, 1.0), 0);

    std::map<Word, Eigen::Index, WordLess> rows;
    auto index_words = [&rows](const FreePoly& p) {
        for (const auto& [w, c] : p.terms()) rows.try_emplace(w, 0);
    };
    index_words(target);
    for (const auto& e : expansions) index_words(e);
    Eigen::Index r = 0;
    for (auto& [w, idx] : rows) idx = r++;

    CMatrix a = CMatrix::Zero(r, static_cast<Eigen::Index>(expansions.size()));
    CVector b = CVector::Zero(r);
    for (std::size_t j = 0; j < expansions.size(); ++j)
        for (const auto& [w, c] : expansions[j].terms()) a(rows.at(w), static_cast<Eigen::Index>(j)) = c;
    for (const auto& [w, c] : target.terms()) b(rows.at(w)) = c;

    const Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(a);
    const CVector coeffs = cod.solve(b);

    Expressibility result;
    result.residual = (a * coeffs - b).norm();
    result.expressible = result.residual <= kExpressibilityThreshold;
    if (result.expressible) {
        for (std::size_t j = 0; j < products.size(); ++j) {
            const Scalar c = coeffs(static_cast<Eigen::Index>(j));
            if (std::abs(c) > 1e-12) result.decomposition.push_back({products[j], c});
        }
    }
    return result;
}

std::vector<FreePoly> symmetric_word_basis(int degree) {
    if (degree < 0) throw InvalidInput("symmetric_word_basis: negative degree");
    std::vector<FreePoly> out;
    const std::uint64_t count = std::uint64_t{1} << degree;
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        Word w(static_cast<std::size_t>(degree));
        for (int k = 0; k < degree; ++k) w[k] = static_cast<std::uint8_t>((bits >> (degree - 1 - k)) & 1u);
        Word s = w;
        for (auto& l : s) l = static_cast<std::uint8_t>(1 - l);
        if (s < w) continue;
        FreePoly p = FreePoly::monomial(2, w);
        if (s != w) p += FreePoly::monomial(2, s);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace ncsym
