#include "coarma/rng.hpp"

#include "coarma/special.hpp"

namespace coarma {

// Inverse-CDF sampling keeps one uniform per normal draw, so streams
// stay aligned regardless of how callers interleave uniform()/normal().
double Rng::normal() { return special::norm_quantile(uniform()); }

}  // namespace coarma
