#include "xbarchan/rng.hpp"

#include "xbarchan/math.hpp"

namespace xbar {

uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CellRng::CellRng(uint64_t seed, int row, int col) {
  // fold the cell address into the seed through two mixing rounds
  uint64_t s = seed;
  (void)splitmix64_next(s);
  s ^= 0x517cc1b727220a95ULL * static_cast<uint64_t>(row);
  (void)splitmix64_next(s);
  s ^= 0x2545f4914f6cdd1dULL * static_cast<uint64_t>(col);
  (void)splitmix64_next(s);
  state_ = s;
}

uint64_t CellRng::next_u64() { return splitmix64_next(state_); }

double CellRng::uniform() {
  // 53 random bits, offset by half an ulp to stay inside (0,1)
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CellRng::normal() { return inverse_normal_cdf(uniform()); }

}  // namespace xbar
