#pragma once

// Symmetric-group combinatorics: enumeration, inversion counts, canonical
// reduced words in the Coxeter generators, the quasi-multiplicative map
// pi -> T_{i_1}...T_{i_l}, and the permutation-sum form of the level
// operators.
//
// Convention: a Permutation stores images[i-1] = pi(i) with 1-based values;
// a word (i_1,...,i_l) represents sigma_{i_1}...sigma_{i_l} composed as
// functions (rightmost letter acts first), matching matrix products.

#include <vector>

#include "twistlab/tensor.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

struct Permutation {
  std::vector<int> images;  // bijection on {1..n}

  int n() const { return int(images.size()); }
  int operator()(int i) const { return images[i - 1]; }
  bool is_valid() const;
};

using ReducedWord = std::vector<int>;  // Coxeter generator indices, 1-based

/// All n! permutations in lexicographic order of the image sequence.
/// Guard: n <= 8.
std::vector<Permutation> enumerate_permutations(int n);

int inversion_count(const Permutation& pi);

/// Right-peeled canonical word: pi = rho . gamma_k with k = pi^{-1}(n),
/// gamma_k = sigma_{n-1}...sigma_k, rho in S_{n-1}; the word is
/// word(rho) ++ (n-1, n-2, ..., k) and is reduced.
ReducedWord canonical_word(const Permutation& pi);

/// Left-peeled mirror: pi = rho . delta_k with k = pi^{-1}(1),
/// delta_k = sigma_1...sigma_{k-1}, rho fixing 1; the word is
/// word(rho) ++ (1, 2, ..., k-1) and is reduced.
ReducedWord mirrored_canonical_word(const Permutation& pi);

/// Applies a word to the identity to recover the permutation it represents.
Permutation word_to_permutation(const ReducedWord& w, int n);

/// t(sigma_{i_1}...sigma_{i_l}) = T_{i_1}...T_{i_l} on n legs.
Mat quasi_mult_eval(const Twist& t, const ReducedWord& w, int n);

enum class Peeling { Right, Left };

/// Sum over S_n of quasi_mult_eval with the chosen canonical words.
/// Left peeling reproduces the recursion (1 (x) P_{n-1}) R_n identically;
/// right peeling reproduces the reversed factorization (P_{n-1} (x) 1) R~_n.
/// For braided twists the two agree and equal P_n.  Guard: d^n <= 4096.
Mat p_sum(const Twist& t, int n, Peeling peeling = Peeling::Right);

/// d = 1 specialization of the permutation sum: sum over S_n of
/// q^{inversions}, the q-factorial [n]_q!.
double q_factorial(double q, int n);

}  // namespace twistlab
