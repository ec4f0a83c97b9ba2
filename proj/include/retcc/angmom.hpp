#pragma once

#include <cstdint>

namespace retcc {

// Angular momentum stored as 2j so integer and half-integer values are exact.
class AngMom {
  public:
    constexpr AngMom() = default;
    static constexpr AngMom from_twice(int twice) { return AngMom(twice); }
    static constexpr AngMom integer(int j) { return AngMom(2 * j); }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }

    friend constexpr bool operator==(AngMom a, AngMom b) { return a.twice_ == b.twice_; }
    friend constexpr bool operator!=(AngMom a, AngMom b) { return a.twice_ != b.twice_; }

  private:
    constexpr explicit AngMom(int twice) : twice_(twice) {}
    int twice_ = 0;
};

namespace wigner {

// All of these accept twice-values (2j, 2m).  Magnitudes must be >= 0 and
// projections must satisfy |2m| <= 2j with matching parity; violations throw
// std::domain_error.  Violated triangle or projection-sum rules return 0.
double three_j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3);
double six_j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6);
double nine_j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6,
              int tj7, int tj8, int tj9);

inline double three_j(AngMom j1, AngMom j2, AngMom j3, AngMom m1, AngMom m2, AngMom m3) {
    return three_j(j1.twice(), j2.twice(), j3.twice(), m1.twice(), m2.twice(), m3.twice());
}

double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tj, int tm);

bool triangle_ok(int tj1, int tj2, int tj3);

// Cache statistics, for tests and diagnostics.
struct CacheStats {
    std::uint64_t hits;
    std::uint64_t misses;
};
CacheStats cache_stats();
void clear_caches();

}  // namespace wigner
}  // namespace retcc
