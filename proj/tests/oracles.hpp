#pragma once

// Brute-force reference implementations straight from the definitions.
// Exponential on purpose; only use on small frames.

#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "dsfusion/mass_function.hpp"

namespace oracle {

using Table = std::vector<double>;  // indexed by subset bits, size 2^n

inline Table dense(const dsfusion::MassFunction& m) {
  Table t(std::size_t{1} << m.frame().size(), 0.0);
  for (const auto& f : m.focal_elements()) t[f.subset.bits()] = f.mass;
  return t;
}

inline double belief(const Table& m, std::uint64_t a) {
  double s = 0.0;
  for (std::uint64_t b = 1; b < m.size(); ++b) {
    if ((b & ~a) == 0) s += m[b];
  }
  return s;
}

inline double plausibility(const Table& m, std::uint64_t a) {
  double s = 0.0;
  for (std::uint64_t b = 1; b < m.size(); ++b) {
    if ((b & a) != 0) s += m[b];
  }
  return s;
}

// mu(A) = sum over H containing A of m(H)/|H|
inline Table transform(const Table& m) {
  Table mu(m.size(), 0.0);
  for (std::uint64_t a = 1; a < m.size(); ++a) {
    for (std::uint64_t h = 1; h < m.size(); ++h) {
      if ((a & ~h) == 0) mu[a] += m[h] / std::popcount(h);
    }
  }
  return mu;
}

// Conjunctive product of two set functions over all 4^n pairs.
inline Table conjunctive(const Table& x, const Table& y) {
  Table u(x.size(), 0.0);
  for (std::uint64_t b = 1; b < x.size(); ++b) {
    for (std::uint64_t c = 1; c < y.size(); ++c) u[b & c] += x[b] * y[c];
  }
  return u;
}

struct AltOutcome {
  double conflict = 0.0;
  double denominator = 0.0;
  Table combined;
};

inline AltOutcome alt(const Table& m1, const Table& m2) {
  AltOutcome out;
  const Table u = conjunctive(transform(m1), transform(m2));
  out.conflict = u[0];
  for (std::uint64_t a = 1; a < u.size(); ++a) out.denominator += u[a];
  out.combined.assign(u.size(), 0.0);
  for (std::uint64_t a = 1; a < u.size(); ++a) out.combined[a] = u[a] / out.denominator;
  return out;
}

struct DempsterOutcome {
  double conflict = 0.0;
  Table combined;
};

inline DempsterOutcome dempster(const Table& m1, const Table& m2) {
  DempsterOutcome out;
  const Table u = conjunctive(m1, m2);
  out.conflict = u[0];
  out.combined.assign(u.size(), 0.0);
  for (std::uint64_t a = 1; a < u.size(); ++a) out.combined[a] = u[a] / (1.0 - out.conflict);
  return out;
}

}  // namespace oracle
