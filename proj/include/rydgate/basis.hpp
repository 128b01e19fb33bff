#pragma once

#include <array>

// Basis orderings for every Hamiltonian and gate matrix. All state indices
// used elsewhere come from here. In two-atom kets the control atom is written
// first: |ab> = |a>_c ⊗ |b>_t.
namespace rydgate::basis {

// Single excitation manifold of one driven atom: {|0r>, |01>}.
namespace single {
inline constexpr int k0r = 0;
inline constexpr int k01 = 1;
inline constexpr int dim = 2;
}  // namespace single

// Symmetric blockade manifold: {|rr>, (|1r>+|r1>)/√2, |11>}.
namespace v1 {
inline constexpr int k_rr = 0;
inline constexpr int k_bright = 1;
inline constexpr int k_11 = 2;
inline constexpr int dim = 3;
}  // namespace v1

// Two-pulse manifold: {|rr>, |r1>, |1r>, |11>}.
namespace v2 {
inline constexpr int k_rr = 0;
inline constexpr int k_r1 = 1;
inline constexpr int k_1r = 2;
inline constexpr int k_11 = 3;
inline constexpr int dim = 4;
}  // namespace v2

// Target-only reduction: {|1r>, |11>}.
namespace vt_reduced {
inline constexpr int k_1r = 0;
inline constexpr int k_11 = 1;
inline constexpr int dim = 2;
}  // namespace vt_reduced

// Computational two-qubit basis: {|00>, |01>, |10>, |11>}.
namespace comp {
inline constexpr int k00 = 0;
inline constexpr int k01 = 1;
inline constexpr int k10 = 2;
inline constexpr int k11 = 3;
inline constexpr int dim = 4;
}  // namespace comp

// Per-atom levels of the leakage model.
enum class Level : int { g0 = 0, g1 = 1, r = 2, d = 3, s = 4, a = 5 };
inline constexpr int atom_dim = 6;
inline constexpr int pair_dim = atom_dim * atom_dim;
inline constexpr std::array<Level, atom_dim> atom_order = {Level::g0, Level::g1, Level::r,
                                                          Level::d,  Level::s,  Level::a};

constexpr int index(Level l) { return static_cast<int>(l); }
constexpr int pair(Level control, Level target) { return atom_dim * index(control) + index(target); }

// Eq. 4 sector per atom {|0>, |1>, |r>}.
inline constexpr int ladder_dim = 3;
constexpr int ladder_pair(int control, int target) { return ladder_dim * control + target; }

// Computational state k (0..3) inside the 36-dim and 9-dim spaces.
constexpr int comp_to_pair(int k) { return pair(k / 2 == 0 ? Level::g0 : Level::g1, k % 2 == 0 ? Level::g0 : Level::g1); }
constexpr int comp_to_ladder(int k) { return ladder_pair(k / 2, k % 2); }

}  // namespace rydgate::basis
