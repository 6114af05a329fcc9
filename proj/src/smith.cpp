#include "rkdual/smith.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

namespace rkdual {

namespace {

// Working copy of a matrix during elimination: rows plus a column index.
class Eliminator {
 public:
  Eliminator(const Matrix& m, const Ring& ring)
      : ring_(ring), rows_(m.rows()), col_rows_(m.cols()), row_active_(m.rows(), true) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto& [c, v] : m.row(r)) {
        Integer x = ring_.reduce(v);
        if (sgn(x) == 0) continue;
        rows_[r].emplace(c, x);
        col_rows_[c].insert(r);
      }
  }

  SmithForm run() {
    SmithForm out;
    std::vector<Integer> diag;
    while (auto pivot = choose_pivot()) {
      auto [r, c] = *pivot;
      if (ring_.is_field() || ring_.is_unit(rows_[r].at(c))) {
        eliminate_unit(r, c);
        diag.emplace_back(1);
      } else if (reduce_integer_pivot(r, c)) {
        diag.push_back(abs(rows_[r].at(c)));
        retire(r, c);
      }
    }
    out.rank = diag.size();
    if (!ring_.is_field()) normalize_divisibility(diag);
    out.factors = std::move(diag);
    return out;
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> choose_pivot() const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    // (|value|, markowitz cost); |value| is ignored over Z/p where all entries are units.
    std::tuple<Integer, std::size_t> best_key;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!row_active_[r]) continue;
      const std::size_t row_len = rows_[r].size();
      for (const auto& [c, v] : rows_[r]) {
        Integer magnitude = ring_.kind() == Ring::Kind::integers_mod_p ? Integer(1) : Integer(abs(v));
        std::size_t cost = (row_len - 1) * (col_rows_[c].size() - 1);
        std::tuple<Integer, std::size_t> key{magnitude, cost};
        if (!best || key < best_key) {
          best = {r, c};
          best_key = std::move(key);
        }
      }
    }
    return best;
  }

  void set_entry(std::size_t r, std::size_t c, Integer v) {
    v = ring_.reduce(v);
    auto& row = rows_[r];
    if (sgn(v) == 0) {
      if (row.erase(c)) col_rows_[c].erase(r);
      return;
    }
    auto [it, inserted] = row.try_emplace(c, v);
    if (inserted)
      col_rows_[c].insert(r);
    else
      it->second = std::move(v);
  }

  // rows_[dst] += coef * rows_[src]
  void axpy(std::size_t dst, const Integer& coef, std::size_t src) {
    for (const auto& [c, v] : rows_[src]) {
      auto it = rows_[dst].find(c);
      Integer current = it == rows_[dst].end() ? Integer(0) : it->second;
      set_entry(dst, c, current + coef * v);
    }
  }

  void scale_row(std::size_t r, const Integer& s) {
    for (auto& [c, v] : rows_[r]) v = ring_.reduce(v * s);
  }

  void remove_content(std::size_t r) {
    Integer g = 0;
    for (const auto& [c, v] : rows_[r]) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g > 1)
      for (auto& [c, v] : rows_[r]) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }

  std::vector<std::size_t> other_rows_in_column(std::size_t c, std::size_t r) const {
    std::vector<std::size_t> out;
    for (std::size_t i : col_rows_[c])
      if (i != r) out.push_back(i);
    return out;
  }

  void retire(std::size_t r, std::size_t c) {
    for (const auto& [j, v] : rows_[r]) col_rows_[j].erase(r);
    rows_[r].clear();
    row_active_[r] = false;
    (void)c;
  }

  // Pivot is a unit in the ring: clear its column by row operations; the
  // row is then removed (column operations would only touch the pivot row).
  void eliminate_unit(std::size_t r, std::size_t c) {
    const Integer v = rows_[r].at(c);
    for (std::size_t i : other_rows_in_column(c, r)) {
      const Integer a = rows_[i].at(c);
      switch (ring_.kind()) {
        case Ring::Kind::integers:
          axpy(i, -a * v, r);  // v = +-1 is its own inverse
          break;
        case Ring::Kind::integers_mod_p:
          axpy(i, -a * ring_.inverse(v), r);
          break;
        case Ring::Kind::rationals:
          // v*row_i - a*row_r, then strip the common factor to bound growth.
          scale_row(i, v);
          axpy(i, -a, r);
          remove_content(i);
          break;
      }
    }
    retire(r, c);
  }

  // Non-unit pivot over Z. Returns true once the pivot is alone in its row
  // and column; otherwise smaller remainders were created and the caller
  // re-selects a pivot.
  bool reduce_integer_pivot(std::size_t r, std::size_t c) {
    const Integer v = rows_[r].at(c);
    bool clean = true;
    for (std::size_t i : other_rows_in_column(c, r)) {
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), rows_[i].at(c).get_mpz_t(), v.get_mpz_t());
      if (sgn(q) != 0) axpy(i, -q, r);
      if (rows_[i].count(c)) clean = false;
    }
    if (!clean) return false;
    std::vector<std::pair<std::size_t, Integer>> updates;
    for (const auto& [j, b] : rows_[r]) {
      if (j == c) continue;
      Integer rem;
      mpz_tdiv_r(rem.get_mpz_t(), b.get_mpz_t(), v.get_mpz_t());
      updates.emplace_back(j, rem);
    }
    for (auto& [j, rem] : updates) {
      if (sgn(rem) != 0) clean = false;
      set_entry(r, j, rem);
    }
    return clean;
  }

  static void normalize_divisibility(std::vector<Integer>& d) {
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j) {
        Integer g, l;
        mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
        mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
        d[i] = g;
        d[j] = l;
      }
  }

  const Ring& ring_;
  std::vector<std::map<std::size_t, Integer>> rows_;
  std::vector<std::set<std::size_t>> col_rows_;
  std::vector<bool> row_active_;
};

}  // namespace

SmithForm smith_normal_form(const Matrix& m, const Ring& ring) {
  return Eliminator(m, ring).run();
}

std::size_t rank(const Matrix& m, const Ring& ring) {
  return smith_normal_form(m, ring).rank;
}

}  // namespace rkdual
