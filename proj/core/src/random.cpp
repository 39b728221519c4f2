#include "hyperdesign/random.hpp"

#include "hyperdesign/types.hpp"

namespace hd {

std::uint64_t Rng::below(std::uint64_t n)
{
    if (n == 0) throw InvalidArgument("below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
}

double Rng::uniform01()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

bool Rng::bernoulli(const mpq_class& p)
{
    if (p <= 0) {
        next();
        return false;
    }
    if (p >= 1) {
        next();
        return true;
    }
    const std::uint64_t u = next();
    mpz_class lhs;
    mpz_import(lhs.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
    lhs *= p.get_den();
    mpz_class rhs = p.get_num();
    rhs <<= 64;
    return lhs < rhs;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace hd
