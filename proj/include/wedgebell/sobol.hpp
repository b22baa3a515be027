#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace wedgebell {

/// Sobol low-discrepancy sequence (Joe-Kuo direction numbers) with a random
/// linear matrix scramble and digital shift drawn from a seed.
///
/// Points are 32-bit: indices must stay below 2^32. Coordinates lie strictly
/// inside (0, 1).
class SobolSequence {
public:
  static constexpr int kMaxDims = 8;
  static constexpr int kBits = 32;

  /// Unscrambled sequence.
  explicit SobolSequence(int dims);
  /// Scrambled by (seed, stream); distinct streams are independent replicas.
  SobolSequence(int dims, std::uint64_t seed, std::uint64_t stream);

  int dims() const { return dims_; }

  /// Point with the given index in Gray-code order, written to out[0..dims).
  void point(std::uint64_t index, double* out) const;

  /// Incremental generator starting at a given index.
  class Cursor {
  public:
    Cursor(const SobolSequence& seq, std::uint64_t start);
    /// Writes the current point and advances.
    void next(double* out);

  private:
    const SobolSequence* seq_;
    std::uint64_t index_;
    std::array<std::uint32_t, kMaxDims> state_{};
  };

  Cursor cursor(std::uint64_t start) const { return Cursor(*this, start); }

private:
  int dims_;
  std::vector<std::array<std::uint32_t, kBits>> directions_;
  std::array<std::uint32_t, kMaxDims> shift_{};

  static double to_unit(std::uint32_t bits) {
    return (static_cast<double>(bits) + 0.5) * 0x1p-32;
  }
};

}  // namespace wedgebell
