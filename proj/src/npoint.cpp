#include "twistlab/npoint.hpp"

#include <algorithm>
#include <cmath>

namespace twistlab {

namespace {

Eigen::Index ipow(int d, int n) {
  Eigen::Index out = 1;
  for (int i = 0; i < n; ++i) out *= d;
  return out;
}

void list_matchings(std::vector<int>& free, std::vector<std::pair<int, int>>& current,
                    std::vector<PairDiagram>& out) {
  if (free.empty()) {
    out.push_back(PairDiagram::from_pairs(current));
    return;
  }
  const int s = free.front();
  for (size_t i = 1; i < free.size(); ++i) {
    const int t = free[i];
    std::vector<int> rest;
    for (size_t j = 1; j < free.size(); ++j)
      if (j != i) rest.push_back(free[j]);
    current.push_back({s, t});
    list_matchings(rest, current, out);
    current.pop_back();
  }
}

}  // namespace

PairDiagram PairDiagram::from_pairs(std::vector<std::pair<int, int>> pairs) {
  for (auto& [s, t] : pairs)
    if (s >= t) throw std::invalid_argument("PairDiagram: curves must run upward (s < t)");
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> seen(2 * pairs.size() + 1, false);
  for (auto& [s, t] : pairs) {
    if (s < 1 || t > int(2 * pairs.size()) || seen[s] || seen[t])
      throw std::invalid_argument("PairDiagram: not a perfect matching of {1..2n}");
    seen[s] = seen[t] = true;
  }
  PairDiagram d;
  d.pairs = std::move(pairs);
  d.crossing_count = twistlab::crossing_count(d.pairs);
  return d;
}

int crossing_count(const std::vector<std::pair<int, int>>& pairs) {
  int count = 0;
  for (size_t a = 0; a < pairs.size(); ++a)
    for (size_t b = 0; b < pairs.size(); ++b) {
      if (a == b) continue;
      const auto [s1, t1] = pairs[a];
      const auto [s2, t2] = pairs[b];
      if (s1 < s2 && s2 < t1 && t1 < t2) ++count;
    }
  return count;
}

std::vector<PairDiagram> enumerate_diagrams(int n) {
  if (n < 1 || n > 5) throw std::length_error("enumerate_diagrams: n out of guard [1,5]");
  std::vector<int> points(2 * n);
  for (int i = 0; i < 2 * n; ++i) points[i] = i + 1;
  std::vector<std::pair<int, int>> current;
  std::vector<PairDiagram> out;
  list_matchings(points, current, out);
  return out;
}

PairDiagram rotate_diagram(const PairDiagram& d) {
  const int two_n = 2 * d.n();
  std::vector<std::pair<int, int>> rotated;
  for (auto [s, t] : d.pairs) {
    if (t == two_n) rotated.push_back({1, s + 1});
    else rotated.push_back({s + 1, t + 1});
  }
  return PairDiagram::from_pairs(std::move(rotated));
}

Cplx wightman(const FockSpace& fs, const StandardSubspace& h, const std::vector<Vec>& xs,
              Cplx z) {
  const int two_n = int(xs.size());
  if (two_n == 0) return 1.0;
  if (two_n > fs.levels())
    throw std::invalid_argument("wightman: truncation level too small for " +
                                std::to_string(two_n) + " fields");
  for (const Vec& x : xs)
    if (x.size() != fs.d()) throw std::invalid_argument("wightman: vector dimension mismatch");

  FockVector state = FockVector::vacuum(fs);
  for (int k = two_n - 1; k >= 0; --k) {
    Vec arg = xs[k];
    if (k == two_n - 1) arg = h.modular_unitary(z) * arg;
    state = field_tomita(fs, arg, Side::Left, h).apply(fs, state);
  }
  // <Omega, . >_T only sees the scalar component.
  return state.blocks[0].size() > 0 ? state.blocks[0][0] : Cplx(0.0);
}

Cplx evaluate_diagram(const PairDiagram& d, const Twist& t, const StandardSubspace& h,
                      const std::vector<Vec>& xs, Cplx z) {
  const int n = d.n();
  const int two_n = 2 * n;
  if (int(xs.size()) != two_n)
    throw std::invalid_argument("evaluate_diagram: expected " + std::to_string(two_n) +
                                " vectors");
  // beyond three chords the diagram value is only well defined when the
  // braid relation holds
  if (n >= 4 && !t.braided())
    throw std::invalid_argument("evaluate_diagram: non-braided twist with n >= 4");
  const int dd = t.d();

  std::vector<int> partner(two_n + 1, 0);
  std::vector<bool> is_start(two_n + 1, false);
  for (auto [s, tt] : d.pairs) {
    partner[s] = tt;
    partner[tt] = s;
    is_start[s] = true;
  }

  std::vector<Vec> vecs(two_n + 1);
  for (int k = 1; k <= two_n; ++k) vecs[k] = xs[k - 1];
  vecs[two_n] = h.modular_unitary(z) * vecs[two_n];
  for (int k = 1; k <= two_n; ++k)
    if (is_start[k]) vecs[k] = h.tomita.apply(vecs[k]);

  // Process positions right to left.  Ends prepend their vector; starts
  // consume the slot of their partner, hopping over nearer slots with one
  // twist insertion per hop.  `slots` holds the alive end positions with
  // the most recent creation in front (ascending order by construction).
  Vec state = Vec::Ones(1);
  int legs = 0;
  std::vector<int> slots;
  int hops = 0;
  for (int k = two_n; k >= 1; --k) {
    if (!is_start[k]) {
      state = kron(vecs[k], state);
      ++legs;
      slots.insert(slots.begin(), k);
      continue;
    }
    const auto it = std::find(slots.begin(), slots.end(), partner[k]);
    const int rank = int(it - slots.begin()) + 1;
    hops += rank - 1;
    for (int j = rank - 1; j >= 1; --j) state = leg_embed(t.matrix(), j, legs, dd) * state;
    // contract the first leg against the (barred) start vector
    const Eigen::Index rest = ipow(dd, legs - 1);
    Vec next = Vec::Zero(rest);
    for (int i = 0; i < dd; ++i)
      next += std::conj(vecs[k][i]) * state.segment(i * rest, rest);
    state = next;
    --legs;
    slots.erase(it);
  }
  if (hops != d.crossing_count)
    throw std::logic_error("evaluate_diagram: hop count does not match crossing count");
  return state[0];
}

double diagram_sum_check(const FockSpace& fs, const StandardSubspace& h,
                         const std::vector<Vec>& xs, Cplx z) {
  const int n = int(xs.size()) / 2;
  Cplx sum = 0.0;
  for (const PairDiagram& d : enumerate_diagrams(n))
    sum += evaluate_diagram(d, fs.twist(), h, xs, z);
  return std::abs(sum - wightman(fs, h, xs, z));
}

Cplx crossing_class_sum(int k, const Twist& t, const StandardSubspace& h,
                        const std::vector<Vec>& xs, Cplx z) {
  const int n = int(xs.size()) / 2;
  Cplx sum = 0.0;
  for (const PairDiagram& d : enumerate_diagrams(n))
    if (d.crossing_count == k) sum += evaluate_diagram(d, t, h, xs, z);
  return sum;
}

// --- explicit closed-form tables for 2n <= 6 -------------------------------

namespace {

struct TableCtx {
  const Twist& t;
  const StandardSubspace& h;
  std::vector<Vec> v;    // 1-based; v[k] = xi_k, with Delta^{iz} on the last
  Vec bar(int k) const { return h.tomita.apply(v[k]); }

  // <bar j, k>
  Cplx pair_(int j, int k) const { return bar(j).dot(v[k]); }
  // <a (x) b, T (c (x) d)>
  Cplx cross(const Vec& a, const Vec& b, const Vec& c, const Vec& d) const {
    return Vec(kron(a, b)).dot(t.matrix() * kron(c, d));
  }
  // a_psi X = (<psi| (x) 1) X for X in H (x) H
  Vec contract(const Vec& psi, const Vec& x2) const {
    const int dd = t.d();
    Vec out = Vec::Zero(dd);
    for (int i = 0; i < dd; ++i)
      out += std::conj(psi[i]) * x2.segment(Eigen::Index(i) * dd, dd);
    return out;
  }
};

}  // namespace

std::vector<std::vector<Cplx>> explicit_term_table(const Twist& t, const StandardSubspace& h,
                                                   const std::vector<Vec>& xs, Cplx z) {
  const int two_n = int(xs.size());
  if (two_n != 2 && two_n != 4 && two_n != 6)
    throw std::invalid_argument("explicit_term_table: only 2n = 2, 4, 6 are tabulated");
  TableCtx ctx{t, h, {}, };
  ctx.v.resize(two_n + 1);
  for (int k = 1; k <= two_n; ++k) ctx.v[k] = xs[k - 1];
  ctx.v[two_n] = h.modular_unitary(z) * ctx.v[two_n];

  std::vector<std::vector<Cplx>> table;
  if (two_n == 2) {
    table.push_back({ctx.pair_(1, 2)});
    return table;
  }
  if (two_n == 4) {
    table.push_back({ctx.pair_(1, 2) * ctx.pair_(3, 4), ctx.pair_(2, 3) * ctx.pair_(1, 4)});
    table.push_back({ctx.cross(ctx.bar(2), ctx.bar(1), ctx.v[3], ctx.v[4])});
    return table;
  }

  // 2n = 6: five 0-crossing, six 1-crossing, three 2-crossing terms and the
  // single 3-crossing term, grouped by crossing number.
  std::vector<Cplx> w0 = {
      ctx.pair_(1, 2) * ctx.pair_(3, 4) * ctx.pair_(5, 6),
      ctx.pair_(2, 3) * ctx.pair_(4, 5) * ctx.pair_(1, 6),
      ctx.pair_(1, 2) * ctx.pair_(4, 5) * ctx.pair_(3, 6),
      ctx.pair_(1, 4) * ctx.pair_(2, 3) * ctx.pair_(5, 6),
      ctx.pair_(2, 5) * ctx.pair_(3, 4) * ctx.pair_(1, 6),
  };
  std::vector<Cplx> w1 = {
      ctx.pair_(1, 2) * ctx.cross(ctx.bar(4), ctx.bar(3), ctx.v[5], ctx.v[6]),
      ctx.pair_(2, 3) * ctx.cross(ctx.bar(4), ctx.bar(1), ctx.v[5], ctx.v[6]),
      ctx.pair_(3, 4) * ctx.cross(ctx.bar(2), ctx.bar(1), ctx.v[5], ctx.v[6]),
      ctx.pair_(4, 5) * ctx.cross(ctx.bar(2), ctx.bar(1), ctx.v[3], ctx.v[6]),
      ctx.cross(ctx.bar(2), ctx.bar(1), ctx.v[3], ctx.v[4]) * ctx.pair_(5, 6),
      ctx.cross(ctx.bar(3), ctx.bar(2), ctx.v[4], ctx.v[5]) * ctx.pair_(1, 6),
  };
  const Mat& tm = t.matrix();
  const Vec t21 = tm * kron(ctx.bar(2), ctx.bar(1));
  const Vec t32 = tm * kron(ctx.bar(3), ctx.bar(2));
  const Vec t45 = tm * kron(ctx.v[4], ctx.v[5]);
  std::vector<Cplx> w2 = {
      Vec(kron(ctx.bar(4), ctx.contract(ctx.v[3], t21)))
          .dot(tm * kron(ctx.v[5], ctx.v[6])),
      Vec(kron(ctx.contract(ctx.v[4], t32), ctx.bar(1)))
          .dot(tm * kron(ctx.v[5], ctx.v[6])),
      Vec(kron(ctx.bar(2), ctx.bar(1)))
          .dot(tm * kron(ctx.contract(ctx.bar(3), t45), ctx.v[6])),
  };
  Mat t2t1t2 = leg_embed(tm, 2, 3, t.d()) * leg_embed(tm, 1, 3, t.d()) *
               leg_embed(tm, 2, 3, t.d());
  Vec bra = kron(ctx.bar(3), Vec(kron(ctx.bar(2), ctx.bar(1))));
  Vec ket = kron(ctx.v[4], Vec(kron(ctx.v[5], ctx.v[6])));
  std::vector<Cplx> w3 = {Cplx(bra.dot(t2t1t2 * ket))};

  table.push_back(std::move(w0));
  table.push_back(std::move(w1));
  table.push_back(std::move(w2));
  table.push_back(std::move(w3));
  return table;
}

std::vector<std::vector<PairDiagram>> explicit_term_diagrams(int n) {
  const auto dg = [](std::vector<std::pair<int, int>> p) {
    return PairDiagram::from_pairs(std::move(p));
  };
  if (n == 1) return {{dg({{1, 2}})}};
  if (n == 2)
    return {{dg({{1, 2}, {3, 4}}), dg({{2, 3}, {1, 4}})}, {dg({{1, 3}, {2, 4}})}};
  if (n != 3) throw std::invalid_argument("explicit_term_diagrams: only n <= 3 tabulated");
  // Term-by-term pairing with the 2n = 6 table above.  Within the
  // 2-crossing class the middle two table entries belong to the diagrams
  // in swapped order relative to naive listing; fixed by direct expansion.
  return {
      {dg({{1, 2}, {3, 4}, {5, 6}}), dg({{2, 3}, {4, 5}, {1, 6}}),
       dg({{1, 2}, {4, 5}, {3, 6}}), dg({{1, 4}, {2, 3}, {5, 6}}),
       dg({{2, 5}, {3, 4}, {1, 6}})},
      {dg({{1, 2}, {3, 5}, {4, 6}}), dg({{2, 3}, {1, 5}, {4, 6}}),
       dg({{3, 4}, {1, 5}, {2, 6}}), dg({{4, 5}, {1, 3}, {2, 6}}),
       dg({{1, 3}, {2, 4}, {5, 6}}), dg({{2, 4}, {3, 5}, {1, 6}})},
      {dg({{1, 3}, {2, 5}, {4, 6}}), dg({{1, 5}, {2, 4}, {3, 6}}),
       dg({{1, 4}, {2, 6}, {3, 5}})},
      {dg({{1, 4}, {2, 5}, {3, 6}})},
  };
}

KmsReport kms_shift_check(const FockSpace& fs, const StandardSubspace& h,
                          const std::vector<Vec>& xs, const std::vector<double>& t_samples) {
  KmsReport rep;
  const int two_n = int(xs.size());
  const int n = two_n / 2;
  for (double ts : t_samples) {
    // W(t - i) against the cyclic permutation at real t.
    const Cplx left = wightman(fs, h, xs, Cplx(ts, -1.0));
    std::vector<Vec> cycled;
    cycled.push_back(Vec(h.modular_unitary(ts) * xs[two_n - 1]));
    for (int k = 0; k + 1 < two_n; ++k) cycled.push_back(xs[k]);
    const Cplx right = wightman(fs, h, cycled, 0.0);
    rep.full = std::max(rep.full, std::abs(left - right));

    for (const PairDiagram& d : enumerate_diagrams(n)) {
      const Cplx dl = evaluate_diagram(d, fs.twist(), h, xs, Cplx(ts, -1.0));
      const Cplx dr = evaluate_diagram(rotate_diagram(d), fs.twist(), h, cycled, 0.0);
      rep.per_diagram = std::max(rep.per_diagram, std::abs(dl - dr));
    }
  }
  return rep;
}

}  // namespace twistlab
