#pragma once

// Every basis ordering used in the library lives here.
//
// Single partition, one excitation:
//   standard  {|1g>, |0e>, |0g>}      (cavity photon number, atom level)
//   dressed   {|E1+>, |E1->, |E0>}    |E1+-> = (|1g> +- |0e>)/sqrt2, |E0> = |0g>
//
// Two partitions: A (x) B, index = 3 * a + b for either 3-dim basis.
//
// Four-qubit embedding, big-endian Kronecker order:
//   qubit 0 = cavity a, 1 = atom A, 2 = cavity b, 3 = atom B.
//   Within a qubit, bit value 0 is the occupied/excited level (|1> or |e>)
//   and bit value 1 is the empty/ground level (|0> or |g>), so each
//   partition's cavity (x) atom space reads {|1e>, |1g>, |0e>, |0g>}.
//
// Two-subsystem reductions use {|x1 y1>, |x1 y0>, |x0 y1>, |x0 y0>} with the
// first-named subsystem as the left factor.

#include <array>
#include <cstddef>

namespace djcm::basis {

inline constexpr std::size_t kPartitionDim = 3;
inline constexpr std::size_t kPairDim = 9;
inline constexpr int kQubits = 4;

inline constexpr int kCavityA = 0;
inline constexpr int kAtomA = 1;
inline constexpr int kCavityB = 2;
inline constexpr int kAtomB = 3;

// Dressed indices.
inline constexpr std::size_t kEPlus = 0;
inline constexpr std::size_t kEMinus = 1;
inline constexpr std::size_t kEGround = 2;

// Standard indices.
inline constexpr std::size_t k1g = 0;
inline constexpr std::size_t k0e = 1;
inline constexpr std::size_t k0g = 2;

/// Position of each standard single-partition state inside that partition's
/// 4-dim cavity (x) atom space {|1e>, |1g>, |0e>, |0g>}. |1e> (index 0) is
/// outside the one-excitation sector.
inline constexpr std::array<std::size_t, 3> kStandardToQubitPair = {1, 2, 3};
inline constexpr std::size_t kTwoExcitationLevel = 0;

}  // namespace djcm::basis
