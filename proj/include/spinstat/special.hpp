#pragma once

namespace spinstat {

// Dilogarithm Li2(z) for z <= 1, absolute accuracy well below 1e-12.
// Power series on |z| <= 1/2, the Landen transform on (-1, -1/2), the
// reflection formula on (1/2, 1], and the inversion formula below -1, so
// every evaluation reduces to a series with |argument| <= 1/2.
// Throws std::domain_error for z > 1.
double dilog(double z);

} // namespace spinstat
