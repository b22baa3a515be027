#include "wedgebell/sobol.hpp"

#include <bit>
#include <random>
#include <stdexcept>

namespace wedgebell {

namespace {

struct Primitive {
  int degree;
  std::uint32_t coeffs;
  std::array<std::uint32_t, 5> m;
};

// new-joe-kuo-6.21201, dimensions 2..8
constexpr std::array<Primitive, SobolSequence::kMaxDims - 1> kTable{{
    {1, 0, {1, 0, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0, 0}},
    {3, 1, {1, 3, 1, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0}},
    {4, 1, {1, 1, 3, 3, 0}},
    {4, 4, {1, 3, 5, 13, 0}},
    {5, 2, {1, 1, 5, 5, 17}},
}};

std::array<std::uint32_t, SobolSequence::kBits> direction_numbers(int dim) {
  constexpr int B = SobolSequence::kBits;
  std::array<std::uint32_t, B> v{};
  if (dim == 0) {
    for (int k = 0; k < B; ++k) v[k] = 1u << (B - 1 - k);
    return v;
  }
  const Primitive& p = kTable[dim - 1];
  const int s = p.degree;
  for (int k = 0; k < s && k < B; ++k) v[k] = p.m[k] << (B - 1 - k);
  for (int k = s; k < B; ++k) {
    std::uint32_t next = v[k - s] ^ (v[k - s] >> s);
    for (int j = 1; j < s; ++j) {
      if ((p.coeffs >> (s - 1 - j)) & 1u) next ^= v[k - j];
    }
    v[k] = next;
  }
  return v;
}

// Lower-triangular (in digit order, most significant digit first) binary
// matrix with unit diagonal, applied to a 32-digit vector.
std::uint32_t apply_lms(const std::array<std::uint32_t, 32>& rows, std::uint32_t in) {
  std::uint32_t out = 0;
  for (int i = 0; i < 32; ++i) {
    out |= static_cast<std::uint32_t>(std::popcount(rows[i] & in) & 1) << (31 - i);
  }
  return out;
}

}  // namespace

SobolSequence::SobolSequence(int dims) : dims_(dims) {
  if (dims < 1 || dims > kMaxDims) throw std::invalid_argument("Sobol dimension out of range");
  for (int d = 0; d < dims; ++d) directions_.push_back(direction_numbers(d));
}

SobolSequence::SobolSequence(int dims, std::uint64_t seed, std::uint64_t stream)
    : SobolSequence(dims) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  for (int d = 0; d < dims_; ++d) {
    std::array<std::uint32_t, 32> rows{};
    for (int i = 0; i < 32; ++i) {
      const std::uint32_t diag = 1u << (31 - i);
      // digits 0..i-1 live in bits 31..32-i
      const std::uint32_t above = i == 0 ? 0u : ~((1u << (32 - i)) - 1u);
      rows[i] = (static_cast<std::uint32_t>(rng()) & above) | diag;
    }
    for (auto& v : directions_[d]) v = apply_lms(rows, v);
    shift_[d] = static_cast<std::uint32_t>(rng());
  }
}

void SobolSequence::point(std::uint64_t index, double* out) const {
  const std::uint64_t gray = index ^ (index >> 1);
  for (int d = 0; d < dims_; ++d) {
    std::uint32_t bits = shift_[d];
    for (int k = 0; k < kBits; ++k) {
      if ((gray >> k) & 1u) bits ^= directions_[d][k];
    }
    out[d] = to_unit(bits);
  }
}

SobolSequence::Cursor::Cursor(const SobolSequence& seq, std::uint64_t start)
    : seq_(&seq), index_(start) {
  const std::uint64_t gray = start ^ (start >> 1);
  for (int d = 0; d < seq.dims_; ++d) {
    std::uint32_t bits = seq.shift_[d];
    for (int k = 0; k < kBits; ++k) {
      if ((gray >> k) & 1u) bits ^= seq.directions_[d][k];
    }
    state_[d] = bits;
  }
}

void SobolSequence::Cursor::next(double* out) {
  for (int d = 0; d < seq_->dims_; ++d) out[d] = to_unit(state_[d]);
  // Gray code: going from index to index+1 flips bit ctz(index+1).
  const int k = std::countr_zero(index_ + 1);
  ++index_;
  for (int d = 0; d < seq_->dims_; ++d) state_[d] ^= seq_->directions_[d][k];
}

}  // namespace wedgebell
