// Walk-through: vacuum moments, the free momentum group on the vacuum, and its oracle.
#include <cstdio>

#include "semicircle/evolution.hpp"
#include "semicircle/oracle.hpp"

using namespace semicircle;

int main()
{
    std::printf("even vacuum moments of X (Catalan numbers):");
    for (unsigned n = 0; n <= 6; ++n)
        std::printf(" %.0f", vacuum_moment(2 * n, observable::X, 4 * n + 2));
    std::printf("\n\n");

    const double t = 1.0;
    const auto s = evolve_P(0, t, 16);
    const std::size_t dim = truncation_level(t, 0, 1e-12);
    const auto oracle = expm_apply(momentum<cplx>(dim), cplx(0.0, t), fock_vector<cplx>::basis(dim, 0));
    std::printf("e^{iP} Phi_0, closed form vs %zu-level matrix exponential\n", dim);
    std::printf("%3s %24s %24s %10s\n", "l", "closed form", "oracle", "|diff|");
    for (std::size_t l = 0; l < 8; ++l)
        std::printf("%3zu %+11.8f%+11.8fi %+11.8f%+11.8fi %10.2e\n", l, s.amplitudes[l].real(), s.amplitudes[l].imag(),
                    oracle.value.coeffs[l].real(), oracle.value.coeffs[l].imag(),
                    std::abs(s.amplitudes[l] - oracle.value.coeffs[l]));
    std::printf("\ncharacteristic function <Phi_0, e^{itP} Phi_0> = J_1(2t)/t\n");
    for (double tt : {0.5, 1.0, 2.0, 4.0})
        std::printf("  t = %.1f  %.17g\n", tt, char_function(generator_kind::P, tt).real());
}
