// Copyright 2026 The goodrot authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace goodrot {

FamilySpec::FamilySpec(unsigned n_, unsigned p_) : n(n_), p(p_) {
  if (n < 1 || n > 62)
    throw std::invalid_argument("FamilySpec: n must be in [1, 62]");
  if (p < n || p > 62)
    throw std::invalid_argument("FamilySpec: p must satisfy n <= p <= 62");
}

GridPoint CatalogEntry::scaled(const FamilySpec& spec) const {
  return GridPoint(x << spec.q(), y << spec.q(), Precision(spec.p));
}

namespace {

double circle_max_gap(const std::vector<double>& octant_thetas) {
  // The full-circle angle set has period pi/2 and is mirror-symmetric
  // inside each quarter, so one quarter determines every gap.
  std::vector<double> quarter;
  quarter.reserve(2 * octant_thetas.size());
  for (double t : octant_thetas) {
    quarter.push_back(t);
    quarter.push_back(std::numbers::pi / 2 - t);
  }
  std::sort(quarter.begin(), quarter.end());
  quarter.erase(std::unique(quarter.begin(), quarter.end()), quarter.end());
  if (quarter.empty()) return 2 * std::numbers::pi;
  double max_gap = 0.0;
  for (size_t i = 1; i < quarter.size(); ++i)
    max_gap = std::max(max_gap, quarter[i] - quarter[i - 1]);
  // Wrap across the quarter boundary onto the next period's first angle.
  max_gap = std::max(
      max_gap, quarter.front() + std::numbers::pi / 2 - quarter.back());
  return max_gap;
}

}  // namespace

AngleCatalog generate_family(const FamilySpec& spec) {
  Factorization fac = factorize(spec.target());
  // 2^(2n) + 1 has no prime factor = 3 (mod 4); enumeration always applies.
  if (!fac.g_list.empty())
    throw std::logic_error("generate_family: unexpected 3 (mod 4) factor");
  SolutionSet sols = enumerate_solutions(fac);

  AngleCatalog catalog{spec, std::move(fac), {}, 0.0};
  for (const GaussianInt& z : sols.representatives) {
    // One octant point per conjugate pair: keep representatives with
    // y <= x. S(n) is neither a square nor twice a square, so axis and
    // diagonal points cannot occur.
    if (classify_quadruplet(z) != QuadrupletClass::generic)
      throw std::logic_error("generate_family: axis/diagonal solution on S(n)");
    if (z.im > z.re) continue;
    const auto x = static_cast<int64_t>(z.re);
    const auto y = static_cast<int64_t>(z.im);
    catalog.entries.push_back(CatalogEntry{
        x, y, std::atan2(static_cast<double>(y), static_cast<double>(x))});
  }

  std::sort(catalog.entries.begin(), catalog.entries.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) {
              return angle_less(a.x, a.y, b.x, b.y);
            });
  for (size_t i = 1; i < catalog.entries.size(); ++i)
    if (!angle_less(catalog.entries[i - 1].x, catalog.entries[i - 1].y,
                    catalog.entries[i].x, catalog.entries[i].y))
      throw std::logic_error("generate_family: duplicate angle in octant");

  // Re-verify the scaled identity (x 2^q)^2 + (y 2^q)^2 = 2^(2p) + 2^(2q).
  for (const CatalogEntry& e : catalog.entries) {
    if (defect(e.scaled(spec)) != spec.scaled_defect())
      throw std::logic_error("generate_family: scaled defect mismatch");
  }

  std::vector<double> thetas;
  thetas.reserve(catalog.entries.size());
  for (const CatalogEntry& e : catalog.entries) thetas.push_back(e.theta);
  catalog.max_gap = circle_max_gap(thetas);
  return catalog;
}

std::vector<ComponentAngle> component_angles(const FamilySpec& spec) {
  Factorization fac = factorize(spec.target());
  std::vector<ComponentAngle> out;
  out.reserve(fac.f_list.size());
  for (const auto& [p, beta] : fac.f_list) {
    GaussianInt z = gaussian_root(p);
    out.push_back(ComponentAngle{
        p, beta, z,
        std::atan2(static_cast<double>(z.im), static_cast<double>(z.re))});
  }
  return out;
}

std::string emit_constants(const GridPoint& g, const std::string& format) {
  const auto [c, s] = to_sin_cos(g);
  char buf[128];
  std::string out;
  if (format == "generic") {
    std::snprintf(buf, sizeof buf, "c = %lld. / 2. ** %u\n",
                  static_cast<long long>(g.x), g.p.bits());
    out += buf;
    std::snprintf(buf, sizeof buf, "s = %lld. / 2. ** %u\n",
                  static_cast<long long>(g.y), g.p.bits());
    out += buf;
  } else if (format == "hex") {
    std::snprintf(buf, sizeof buf, "c = %a\n", c);
    out += buf;
    std::snprintf(buf, sizeof buf, "s = %a\n", s);
    out += buf;
  } else if (format == "rational") {
    const std::string denom = to_string_u128(uint128{1} << g.p.bits());
    out = "c, s = " + std::to_string(g.x) + "/" + denom + ", " +
          std::to_string(g.y) + "/" + denom + "\n";
  } else {
    throw std::invalid_argument("emit_constants: unknown template '" + format +
                                "'");
  }
  return out;
}

}  // namespace goodrot
