// Pairwise-force n-body kernel; the whole computation runs in one secret block.
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <cocoon/cocoon.hpp>

#include "cocoon_labels.hpp"

namespace {

struct [[cocoon::derive_isef]] Body {
  double x;
  double y;
  double z;
  double vx;
  double vy;
  double vz;
  double mass;
};

using System = std::array<Body, 5>;

constexpr double kPi = 3.141592653589793;
constexpr double kSolarMass = 4 * kPi * kPi;
constexpr double kDaysPerYear = 365.24;

constexpr System kInitial = {{
    {0, 0, 0, 0, 0, 0, kSolarMass},
    {4.84143144246472090e+00, -1.16032004402742839e+00, -1.03622044471123109e-01, 1.66007664274403694e-03 * kDaysPerYear,
     7.69901118419740425e-03 * kDaysPerYear, -6.90460016972063023e-05 * kDaysPerYear,
     9.54791938424326609e-04 * kSolarMass},
    {8.34336671824457987e+00, 4.12479856412430479e+00, -4.03523417114321381e-01, -2.76742510726862411e-03 * kDaysPerYear,
     4.99852801234917238e-03 * kDaysPerYear, 2.30417297573763929e-05 * kDaysPerYear,
     2.85885980666130812e-04 * kSolarMass},
    {1.28943695621391310e+01, -1.51111514016986312e+01, -2.23307578892655734e-01, 2.96460137564761618e-03 * kDaysPerYear,
     2.37847173959480950e-03 * kDaysPerYear, -2.96589568540237556e-05 * kDaysPerYear,
     4.36624404335156298e-05 * kSolarMass},
    {1.53796971148509165e+01, -2.59193146099879641e+01, 1.79258772950371181e-01, 2.68067772490389322e-03 * kDaysPerYear,
     1.62824170038242295e-03 * kDaysPerYear, -9.51592254519715870e-05 * kDaysPerYear,
     5.15138902046611451e-05 * kSolarMass},
}};

[[cocoon::side_effect_free]] void offset_momentum(System* s) {
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;
  for (int i = 0; i < 5; ++i) {
    px += (*s)[i].vx * (*s)[i].mass;
    py += (*s)[i].vy * (*s)[i].mass;
    pz += (*s)[i].vz * (*s)[i].mass;
  }
  (*s)[0].vx = -px / kSolarMass;
  (*s)[0].vy = -py / kSolarMass;
  (*s)[0].vz = -pz / kSolarMass;
}

[[cocoon::side_effect_free]] void advance(System* s, double dt) {
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      const double dx = (*s)[i].x - (*s)[j].x;
      const double dy = (*s)[i].y - (*s)[j].y;
      const double dz = (*s)[i].z - (*s)[j].z;
      const double d2 = dx * dx + dy * dy + dz * dz;
      const double mag = dt / (d2 * ::std::sqrt(d2));
      (*s)[i].vx -= dx * (*s)[j].mass * mag;
      (*s)[i].vy -= dy * (*s)[j].mass * mag;
      (*s)[i].vz -= dz * (*s)[j].mass * mag;
      (*s)[j].vx += dx * (*s)[i].mass * mag;
      (*s)[j].vy += dy * (*s)[i].mass * mag;
      (*s)[j].vz += dz * (*s)[i].mass * mag;
    }
  }
  for (int i = 0; i < 5; ++i) {
    (*s)[i].x += dt * (*s)[i].vx;
    (*s)[i].y += dt * (*s)[i].vy;
    (*s)[i].z += dt * (*s)[i].vz;
  }
}

[[cocoon::side_effect_free]] double energy(const System* s) {
  double e = 0.0;
  for (int i = 0; i < 5; ++i) {
    e += 0.5 * (*s)[i].mass * ((*s)[i].vx * (*s)[i].vx + (*s)[i].vy * (*s)[i].vy + (*s)[i].vz * (*s)[i].vz);
    for (int j = i + 1; j < 5; ++j) {
      const double dx = (*s)[i].x - (*s)[j].x;
      const double dy = (*s)[i].y - (*s)[j].y;
      const double dz = (*s)[i].z - (*s)[j].z;
      e -= (*s)[i].mass * (*s)[j].mass / ::std::sqrt(dx * dx + dy * dy + dz * dz);
    }
  }
  return e;
}

}  // namespace

double nbody_secret(int steps) {
  auto e = secret_block(lat::Label_A) {
    System sys = kInitial;
    offset_momentum(&sys);
    for (int k = 0; k < steps; ++k) {
      advance(&sys, 0.01);
    }
    return wrap_secret(energy(&sys));
  };
  return e.declassify();
}

#ifdef COCOON_BENCH_MAIN
int main(int argc, char** argv) { std::printf("%.9f\n", nbody_secret(argc > 1 ? std::atoi(argv[1]) : 1000)); }
#endif
