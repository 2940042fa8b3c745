#include "distrecon/invariants.hpp"

namespace distrecon {

// Anchor the common instantiations in one translation unit.
template Rat eval_g<Rat>(const GArguments<Rat>&);
template double eval_g<double>(const GArguments<double>&);
template Rat eval_g_det<Rat>(const GArguments<Rat>&);
template double eval_g_det<double>(const GArguments<double>&);
template Rat eval_gm<Rat>(int, std::span<const Rat>);
template double eval_gm<double>(int, std::span<const double>);
template Rat eval_I<Rat>(const Point2<Rat>&, const Point2<Rat>&, const Point2<Rat>&,
                         const Point2<Rat>&);
template double eval_I<double>(const Point2<double>&, const Point2<double>&, const Point2<double>&,
                               const Point2<double>&);
template OrientationDistribution<Rat> orientation_distribution<Rat>(const PointConfig<Rat>&);
template OrientationDistribution<double> orientation_distribution<double>(
    const PointConfig<double>&);

}  // namespace distrecon
