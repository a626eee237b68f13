#include "octt/clifford.hpp"

#include <bit>

namespace octt {

GramSpace::GramSpace(int r, IntMat g) : rank(r), gram(std::move(g)) {
    DOMAIN_CHECK(r >= 0 && r <= 12);
    DOMAIN_CHECK(gram.rows() == (std::size_t)r && gram.cols() == (std::size_t)r);
    DOMAIN_CHECK(gram == gram.transpose());
}

const GramSpace& octave_gram_space() {
    static const GramSpace s = [] {
        IntMat g(8, 8);
        for (int i = 0; i < 8; ++i) g(i, i) = -2;
        return GramSpace(8, g);
    }();
    return s;
}

CliffordElement CliffordElement::scalar(const Rat& c, const GramSpace& s) {
    CliffordElement x(s);
    x.add_term(0, c);
    return x;
}

CliffordElement CliffordElement::monomial(Mask m, const Rat& c,
                                          const GramSpace& s) {
    DOMAIN_CHECK((m >> s.rank) == 0);
    CliffordElement x(s);
    x.add_term(m, c);
    return x;
}

CliffordElement CliffordElement::embed_vector(const std::vector<Rat>& v,
                                              const GramSpace& s) {
    DOMAIN_CHECK(v.size() == (std::size_t)s.rank);
    CliffordElement x(s);
    for (int i = 0; i < s.rank; ++i)
        if (v[i] != 0) x.add_term(Mask(1) << i, v[i]);
    return x;
}

void CliffordElement::add_term(Mask m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool CliffordElement::is_even() const {
    for (const auto& [m, c] : terms_)
        if (std::popcount(m) % 2 != 0) return false;
    return true;
}

bool CliffordElement::is_integral() const {
    for (const auto& [m, c] : terms_)
        if (!is_integer(c)) return false;
    return true;
}

Rat CliffordElement::coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

CliffordElement CliffordElement::operator+(const CliffordElement& o) const {
    DOMAIN_CHECK(*space_ == *o.space_);
    CliffordElement r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}
CliffordElement CliffordElement::operator-(const CliffordElement& o) const {
    DOMAIN_CHECK(*space_ == *o.space_);
    CliffordElement r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}
CliffordElement CliffordElement::operator-() const {
    CliffordElement r(*space_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}
CliffordElement CliffordElement::operator*(const Rat& s) const {
    CliffordElement r(*space_);
    if (s == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
}

bool CliffordElement::operator==(const CliffordElement& o) const {
    return *space_ == *o.space_ && terms_ == o.terms_;
}

namespace {

struct Accum {
    std::map<CliffordElement::Mask, Rat> terms;
    void add(CliffordElement::Mask m, const Rat& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
};

// Append e_j on the right of the sorted monomial 'm' and normalize:
// bubbling e_j left past a factor e_i uses e_i e_j = (e_i,e_j) - e_j e_i,
// which contributes the contraction term (e_i,e_j) * (m without i) and flips
// the sign of the transposed continuation; meeting e_j itself consumes both
// factors with the value e_j^2 = (e_j,e_j)/2.
void insert_right_impl(const GramSpace& s, CliffordElement::Mask m, int j,
                       const Rat& coef, Accum& accum) {
    int sign = 1;
    for (int i = s.rank - 1; i >= 0; --i) {
        if (!(m >> i & 1)) continue;
        if (i > j) {
            const Int& gij = s.gram(i, j);
            if (gij != 0)
                accum.add(m & ~(CliffordElement::Mask(1) << i),
                          coef * sign * Rat(gij));
            sign = -sign;
        } else if (i == j) {
            accum.add(m & ~(CliffordElement::Mask(1) << j),
                      coef * sign * frac(s.gram(j, j), Int(2)));
            return; // e_j consumed by the square
        } else {
            break; // e_j has reached its sorted slot
        }
    }
    accum.add(m | (CliffordElement::Mask(1) << j), coef * sign);
}

} // namespace

CliffordElement CliffordElement::operator*(const CliffordElement& o) const {
    DOMAIN_CHECK(*space_ == *o.space_);
    const GramSpace& s = *space_;
    CliffordElement result(s);
    for (const auto& [mb, cb] : o.terms_) {
        // Expand (this) * monomial(mb) by inserting the factors of mb one by
        // one in ascending index order.
        Accum cur;
        for (const auto& [ma, ca] : terms_) cur.add(ma, ca * cb);
        for (int j = 0; j < s.rank; ++j) {
            if (!(mb >> j & 1)) continue;
            Accum next;
            for (const auto& [m, c] : cur.terms) insert_right_impl(s, m, j, c, next);
            cur = std::move(next);
        }
        for (const auto& [m, c] : cur.terms) result.add_term(m, c);
    }
    return result;
}

CliffordElement CliffordElement::grade(int k) const {
    DOMAIN_CHECK(0 <= k && k <= space_->rank);
    CliffordElement r(*space_);
    for (const auto& [m, c] : terms_)
        if (std::popcount(m) == k) r.terms_.emplace(m, c);
    return r;
}

CliffordElement CliffordElement::involution() const {
    CliffordElement r(*space_);
    for (const auto& [m, c] : terms_) {
        int k = std::popcount(m);
        bool flip = (k * (k + 1) / 2) % 2 != 0;
        r.terms_.emplace(m, flip ? -c : c);
    }
    return r;
}

bool CliffordElement::is_one_mod2() const {
    DOMAIN_CHECK(is_integral());
    CliffordElement d = *this - scalar(1, *space_);
    for (const auto& [m, c] : d.terms_)
        if (to_int(c) % 2 != 0) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const CliffordElement& x) {
    if (x.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [m, c] : x.terms()) {
        os << (first ? "" : " + ") << c;
        for (int i = 0; i < x.space().rank; ++i)
            if (m >> i & 1) os << "*e" << i;
        first = false;
    }
    return os;
}

CliffordElement clifford_vector(const Octave& x) {
    std::vector<Rat> v(x.e.begin(), x.e.end());
    return CliffordElement::embed_vector(v);
}

CliffordElement e0_times(const Octave& a) {
    return clifford_vector(Octave::basis(0)) * clifford_vector(a);
}

} // namespace octt
