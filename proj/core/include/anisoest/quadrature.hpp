#ifndef ANISOEST_QUADRATURE_HPP
#define ANISOEST_QUADRATURE_HPP

#include <array>

namespace anisoest {

/// Barycentric quadrature point; weights sum to 1 (multiply by |T|).
struct TriQuadPoint {
  double l0, l1, l2, w;
};

/// Edge-midpoint rule, exact for quadratics.
inline constexpr std::array<TriQuadPoint, 3> tri_midpoint_rule = {{
    {0.5, 0.5, 0.0, 1.0 / 3.0},
    {0.0, 0.5, 0.5, 1.0 / 3.0},
    {0.5, 0.0, 0.5, 1.0 / 3.0},
}};

/// Six-point rule, exact for quartics.
inline constexpr std::array<TriQuadPoint, 6> tri_degree4_rule = {{
    {0.108103018168070, 0.445948490915965, 0.445948490915965, 0.223381589678011},
    {0.445948490915965, 0.108103018168070, 0.445948490915965, 0.223381589678011},
    {0.445948490915965, 0.445948490915965, 0.108103018168070, 0.223381589678011},
    {0.816847572980459, 0.091576213509771, 0.091576213509771, 0.109951743655322},
    {0.091576213509771, 0.816847572980459, 0.091576213509771, 0.109951743655322},
    {0.091576213509771, 0.091576213509771, 0.816847572980459, 0.109951743655322},
}};

}  // namespace anisoest

#endif
