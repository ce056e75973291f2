#include "oracles.hpp"

#include <random>
#include <vector>

namespace arisem::testing {

Rat harmonic_exact(int n) {
    Rat h(0);
    for (int k = 1; k <= n; ++k) h += Rat(1, k);
    return h;
}

Real em_gamma_oracle() {
    const long n = 4096;
    Real h(0);
    for (long k = 1; k <= n; ++k) h += Real(1) / k;
    const Real nn(n);
    const Real n2 = nn * nn;
    const Real n4 = n2 * n2;
    Real g = h - log(nn) - 1 / (2 * nn);
    g += 1 / (12 * n2);
    g -= 1 / (120 * n4);
    g += 1 / (252 * n4 * n2);
    g -= 1 / (240 * n4 * n4);
    g += 1 / (132 * n4 * n4 * n2);
    g -= Real(691) / (32760 * n4 * n4 * n4);
    return g;
}

int mobius_sieve(unsigned long n) {
    static std::vector<int> spf;  // smallest prime factor
    if (spf.size() <= n) {
        const unsigned long hi = n + 256;
        spf.assign(hi + 1, 0);
        for (unsigned long i = 2; i <= hi; ++i) {
            if (spf[i] != 0) continue;
            for (unsigned long j = i; j <= hi; j += i)
                if (spf[j] == 0) spf[j] = static_cast<int>(i);
        }
    }
    int factors = 0;
    while (n > 1) {
        const unsigned long p = static_cast<unsigned long>(spf[n]);
        n /= p;
        if (n % p == 0) return 0;
        ++factors;
    }
    return factors % 2 == 0 ? 1 : -1;
}

namespace {

// Dense monic polynomial over F_q: coeffs[i] is the x^i coefficient, the
// leading coefficient is implicit 1 at degree `deg`.
struct Poly {
    std::vector<int> coeffs;
    int deg;
};

// remainder of a (monic, degree da) divided by b (monic, degree db < da)
bool divides(const Poly& b, const Poly& a, int q) {
    std::vector<int> rem(a.coeffs);
    rem.push_back(1);  // leading 1
    for (int shift = a.deg - b.deg; shift >= 0; --shift) {
        const int factor = rem[static_cast<std::size_t>(b.deg + shift)] % q;
        if (factor == 0) continue;
        for (int i = 0; i < b.deg; ++i) {
            int& cell = rem[static_cast<std::size_t>(i + shift)];
            cell = ((cell - factor * b.coeffs[static_cast<std::size_t>(i)]) % q + q) % q;
        }
        rem[static_cast<std::size_t>(b.deg + shift)] = 0;
    }
    for (int i = 0; i < b.deg; ++i)
        if (rem[static_cast<std::size_t>(i)] % q != 0) return false;
    return true;
}

void enumerate(int q, int deg, std::vector<Poly>& out) {
    Poly p;
    p.deg = deg;
    p.coeffs.assign(static_cast<std::size_t>(deg), 0);
    while (true) {
        out.push_back(p);
        int i = 0;
        for (; i < deg; ++i) {
            if (++p.coeffs[static_cast<std::size_t>(i)] < q) break;
            p.coeffs[static_cast<std::size_t>(i)] = 0;
        }
        if (i == deg) break;
    }
}

}  // namespace

Int irreducible_count_bruteforce(int q, int n) {
    std::vector<Poly> divisors;
    for (int d = 1; d <= n / 2; ++d) enumerate(q, d, divisors);
    std::vector<Poly> candidates;
    enumerate(q, n, candidates);
    Int count(0);
    for (const Poly& cand : candidates) {
        bool reducible = false;
        for (const Poly& div : divisors) {
            if (divides(div, cand, q)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) ++count;
    }
    return count;
}

semigroup::GeneratorCounts random_generators(std::uint64_t seed, int n_max, int p_max) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, p_max);
    semigroup::GeneratorCounts p(n_max);
    for (int k = 1; k <= n_max; ++k) p.at(k) = dist(rng);
    return p;
}

semigroup::GeneratorCounts random_generators_bounded(std::uint64_t seed, int n_max, int total_max) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, 3);
    semigroup::GeneratorCounts p(n_max);
    int budget = total_max;
    for (int k = 1; k <= n_max; ++k) {
        int v = std::min(dist(rng), budget);
        p.at(k) = v;
        budget -= v;
    }
    return p;
}

}  // namespace arisem::testing
