#include "twistlab/perm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace twistlab {

bool Permutation::is_valid() const {
  std::vector<bool> seen(images.size(), false);
  for (int v : images) {
    if (v < 1 || v > n() || seen[v - 1]) return false;
    seen[v - 1] = true;
  }
  return true;
}

std::vector<Permutation> enumerate_permutations(int n) {
  if (n < 1 || n > 8) throw std::length_error("enumerate_permutations: n out of guard [1,8]");
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back({images});
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

int inversion_count(const Permutation& pi) {
  int inv = 0;
  for (int i = 1; i <= pi.n(); ++i)
    for (int j = i + 1; j <= pi.n(); ++j)
      if (pi(i) > pi(j)) ++inv;
  return inv;
}

ReducedWord canonical_word(const Permutation& pi) {
  if (!pi.is_valid()) throw std::invalid_argument("canonical_word: not a permutation");
  std::vector<int> img = pi.images;
  ReducedWord word;
  // Peel the top value off repeatedly; collected tails are appended in
  // reverse recursion order, so assemble back-to-front.
  std::vector<ReducedWord> tails;
  for (int n = int(img.size()); n >= 2; --n) {
    int k = 0;
    for (int i = 1; i <= n; ++i)
      if (img[i - 1] == n) { k = i; break; }
    ReducedWord tail;
    for (int letter = n - 1; letter >= k; --letter) tail.push_back(letter);
    tails.push_back(tail);
    // rho = pi . gamma_k^{-1}; gamma_k maps k -> n and j -> j-1 for k<j<=n,
    // so gamma_k^{-1} maps n -> k and j -> j+1 for k<=j<n.
    std::vector<int> rho(n - 1);
    for (int j = 1; j <= n - 1; ++j) {
      const int src = (j < k) ? j : j + 1;  // gamma_k^{-1}(j)
      rho[j - 1] = img[src - 1];
    }
    img = rho;
  }
  for (auto it = tails.rbegin(); it != tails.rend(); ++it)
    word.insert(word.end(), it->begin(), it->end());
  return word;
}

ReducedWord mirrored_canonical_word(const Permutation& pi) {
  if (!pi.is_valid()) throw std::invalid_argument("mirrored_canonical_word: not a permutation");
  const int n = pi.n();
  // Reuse the right-peeled decomposition through the index reversal
  // r(i) = n+1-i: conjugating by r swaps sigma_k <-> sigma_{n-k}.
  std::vector<int> conj(n);
  for (int i = 1; i <= n; ++i) conj[i - 1] = n + 1 - pi(n + 1 - i);
  ReducedWord w = canonical_word({conj});
  for (int& letter : w) letter = n - letter;
  return w;
}

Permutation word_to_permutation(const ReducedWord& w, int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  // rightmost letter acts first: apply letters right-to-left to the identity
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const int k = *it;
    if (k < 1 || k > n - 1) throw std::out_of_range("word_to_permutation: letter out of range");
    // compose sigma_k . current: post-swap the images of k, k+1 values?
    // sigma_k acts on values: (sigma_k . pi)(i) = sigma_k(pi(i)).
    for (int& v : img) {
      if (v == k) v = k + 1;
      else if (v == k + 1) v = k;
    }
  }
  return {img};
}

Mat quasi_mult_eval(const Twist& t, const ReducedWord& w, int n) {
  const Eigen::Index dim = Eigen::Index(std::pow(double(t.d()), n) + 0.5);
  Mat out = Mat::Identity(dim, dim);
  for (int letter : w) {
    if (letter < 1 || letter > n - 1)
      throw std::out_of_range("quasi_mult_eval: letter " + std::to_string(letter) +
                              " out of range for n=" + std::to_string(n));
    out = out * t.leg(letter, n);
  }
  return out;
}

Mat p_sum(const Twist& t, int n, Peeling peeling) {
  const double ambient = std::pow(double(t.d()), n);
  if (n > 8 || ambient > 4096.0)
    throw std::length_error("p_sum: resource guard exceeded");
  const Eigen::Index dim = Eigen::Index(ambient + 0.5);
  Mat sum = Mat::Zero(dim, dim);
  for (const Permutation& pi : enumerate_permutations(n)) {
    const ReducedWord w =
        peeling == Peeling::Right ? canonical_word(pi) : mirrored_canonical_word(pi);
    sum += quasi_mult_eval(t, w, n);
  }
  return sum;
}

double q_factorial(double q, int n) {
  double out = 1.0;
  for (int k = 2; k <= n; ++k) {
    double bracket = 0.0;
    for (int j = 0; j < k; ++j) bracket += std::pow(q, j);
    out *= bracket;
  }
  return out;
}

}  // namespace twistlab
