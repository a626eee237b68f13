// Independent oracles used by the unit tests and the acceptance gate.
//
// Everything here deliberately avoids the library's own fast paths: the shell
// oracle enumerates integer solutions of a plain sum of squares and filters by
// lattice membership, instead of running the lattice-aware search that ships in
// the library.  Agreement between the two routes is what the tests certify.
#pragma once

#include <octt/octave.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace octt::oracle {

// All integer vectors t in Z^8 with sum t_i^2 == s, by direct recursion.
inline void sum_of_squares_rec(int pos, long remaining,
                               std::array<long, 8>& t,
                               std::vector<std::array<long, 8>>& out) {
    if (pos == 8) {
        if (remaining == 0) out.push_back(t);
        return;
    }
    long b = 0;
    while ((b + 1) * (b + 1) <= remaining) ++b;
    for (long v = -b; v <= b; ++v) {
        t[pos] = v;
        sum_of_squares_rec(pos + 1, remaining - v * v, t, out);
    }
    t[pos] = 0;
}

inline std::vector<std::array<long, 8>> sum_of_squares(long s) {
    std::vector<std::array<long, 8>> out;
    std::array<long, 8> t{};
    sum_of_squares_rec(0, s, t, out);
    return out;
}

// Norm-n vectors of the integral lattice, found independently of the
// library's enumerator: a lattice point x of norm n has doubled coordinates
// t = 2x in Z^8 with sum t_i^2 = 4n, so enumerate those and keep the t that
// actually lie in (twice) the lattice.  Membership check: 2F t must be even,
// the resulting coefficient vector g = S^{-1} (F t) must reproduce t.
inline std::vector<IntegralOctave> brute_norm_shell(long n) {
    const IntMat& F2 = f_basis_matrix_doubled();
    const IntMat& Sinv = gram_s_inverse();

    std::vector<IntegralOctave> shell;
    for (const auto& t : sum_of_squares(4 * n)) {
        // u = 2F t; need u even so that F t is integral.
        std::array<long, 8> u{};
        bool even = true;
        for (int i = 0; i < 8; ++i) {
            long s = 0;
            for (int j = 0; j < 8; ++j) s += to_long(F2(i, j)) * t[j];
            u[i] = s;
            if (s % 2 != 0) even = false;
        }
        if (!even) continue;
        IntegralOctave x;
        for (int i = 0; i < 8; ++i) {
            long s = 0;
            for (int j = 0; j < 8; ++j) s += to_long(Sinv(i, j)) * (u[j] / 2);
            x.f[i] = s;
        }
        // Round trip: the candidate is in the lattice iff its doubled
        // coordinates come back unchanged.
        if (x.e_doubled() == t) shell.push_back(x);
    }
    std::sort(shell.begin(), shell.end());
    return shell;
}

// Uniform random integral octave with coefficients in [-box, box].
inline IntegralOctave random_integral(std::mt19937_64& rng, long box = 3) {
    std::uniform_int_distribution<long> d(-box, box);
    IntegralOctave x;
    for (auto& c : x.f) c = d(rng);
    return x;
}

// Uniform random rational octave with small numerators and denominators.
inline Octave random_octave(std::mt19937_64& rng, long box = 5) {
    std::uniform_int_distribution<long> num(-box, box);
    std::uniform_int_distribution<long> den(1, 3);
    Octave x;
    for (auto& c : x.e) c = frac(num(rng), den(rng));
    return x;
}

}  // namespace octt::oracle
