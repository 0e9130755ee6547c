#include "ffproj/subspaces.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace ffproj {

GaussCount pow_exact(std::uint64_t base, unsigned exp) {
  GaussCount result = 1;
  for (unsigned i = 0; i < exp; ++i) result *= base;
  return result;
}

GaussCount gaussian_binomial(int n, int m, std::uint64_t p) {
  if (n < 0 || m < 0 || m > n) {
    throw ContractViolation("gaussian_binomial needs 0 <= m <= n (got n=" + std::to_string(n) +
                            ", m=" + std::to_string(m) + ")");
  }
  if (!is_prime(p)) throw ContractViolation("gaussian_binomial needs a prime p");
  GaussCount num = 1;
  GaussCount den = 1;
  const GaussCount pn = pow_exact(p, static_cast<unsigned>(n));
  const GaussCount pm = pow_exact(p, static_cast<unsigned>(m));
  GaussCount pi = 1;
  for (int i = 0; i < m; ++i) {
    num *= pn - pi;
    den *= pm - pi;
    pi *= p;
  }
  GaussCount quotient, remainder;
  boost::multiprecision::divide_qr(num, den, quotient, remainder);
  if (remainder != 0) throw std::logic_error("Gaussian coefficient division left a remainder");
  return quotient;
}

GaussCount subspace_count(int n, int m, std::uint64_t p) {
  if (n < 0) throw ContractViolation("subspace_count needs n >= 0");
  if (m < 0 || m > n) return 0;
  return gaussian_binomial(n, m, p);
}

bool check_range_condition(int n, int m, std::uint64_t p) {
  const GaussCount g = gaussian_binomial(n, m, p);
  const GaussCount lower = pow_exact(p, static_cast<unsigned>(m * (n - m)));
  return lower <= g && g <= 2 * lower;
}

bool verify_pascal_identities(int n, int m, std::uint64_t p) {
  if (m < 1 || m > n) throw ContractViolation("verify_pascal_identities needs 1 <= m <= n");
  const GaussCount g = gaussian_binomial(n, m, p);
  const bool second = g == subspace_count(n - 1, m, p) +
                               pow_exact(p, static_cast<unsigned>(n - m)) *
                                   subspace_count(n - 1, m - 1, p);
  const bool third = g == subspace_count(n - 1, m - 1, p) +
                              pow_exact(p, static_cast<unsigned>(m)) * subspace_count(n - 1, m, p);
  const bool symmetric = g == gaussian_binomial(n, n - m, p);
  return second && third && symmetric;
}

namespace {

// In-place reduced row echelon form over F_p. Returns pivot columns; zero rows are dropped.
std::vector<unsigned> row_reduce(std::vector<Residue>& rows, unsigned n, std::uint32_t p) {
  const std::size_t count = rows.size() / n;
  auto at = [&](std::size_t r, unsigned c) -> Residue& { return rows[r * n + c]; };
  std::vector<unsigned> pivots;
  std::size_t rank = 0;
  for (unsigned col = 0; col < n && rank < count; ++col) {
    std::size_t sel = rank;
    while (sel < count && at(sel, col) == 0) ++sel;
    if (sel == count) continue;
    if (sel != rank) {
      for (unsigned c = 0; c < n; ++c) std::swap(at(sel, c), at(rank, c));
    }
    const Residue inv = mod_inverse(at(rank, col), p);
    for (unsigned c = 0; c < n; ++c) {
      at(rank, c) = static_cast<Residue>(std::uint64_t{at(rank, c)} * inv % p);
    }
    for (std::size_t r = 0; r < count; ++r) {
      if (r == rank || at(r, col) == 0) continue;
      const std::uint64_t factor = at(r, col);
      for (unsigned c = 0; c < n; ++c) {
        at(r, c) = static_cast<Residue>((at(r, c) + (p - factor) * at(rank, c)) % p);
      }
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank * n);
  return pivots;
}

}  // namespace

Subspace::Subspace(AmbientSpace space, std::vector<Residue> rows, std::vector<unsigned> pivots)
    : space_(std::move(space)), rows_(std::move(rows)), pivots_(std::move(pivots)) {}

Subspace Subspace::span(const AmbientSpace& space, std::span<const FpVector> generators) {
  std::vector<Residue> rows;
  rows.reserve(generators.size() * space.n());
  for (const FpVector& g : generators) {
    check_in_space(space, g);
    rows.insert(rows.end(), g.coords().begin(), g.coords().end());
  }
  std::vector<unsigned> pivots = row_reduce(rows, space.n(), space.p());
  return Subspace(space, std::move(rows), std::move(pivots));
}

Subspace Subspace::zero(const AmbientSpace& space) { return Subspace(space, {}, {}); }

Subspace Subspace::full(const AmbientSpace& space) {
  const unsigned n = space.n();
  std::vector<Residue> rows(std::size_t{n} * n, 0);
  for (unsigned i = 0; i < n; ++i) rows[std::size_t{i} * n + i] = 1;
  std::vector<unsigned> pivots(n);
  std::iota(pivots.begin(), pivots.end(), 0U);
  return Subspace(space, std::move(rows), std::move(pivots));
}

FpVector Subspace::basis_vector(unsigned i) const {
  const auto r = row(i);
  return FpVector(std::vector<Residue>(r.begin(), r.end()));
}

std::vector<FpVector> Subspace::basis() const {
  std::vector<FpVector> out;
  for (unsigned i = 0; i < dim(); ++i) out.push_back(basis_vector(i));
  return out;
}

std::vector<unsigned> Subspace::free_columns() const {
  std::vector<unsigned> out;
  for (unsigned c = 0; c < space_.n(); ++c) {
    if (!std::binary_search(pivots_.begin(), pivots_.end(), c)) out.push_back(c);
  }
  return out;
}

FpVector Subspace::reduce(const FpVector& x) const {
  check_in_space(space_, x);
  const std::uint32_t p = space_.p();
  FpVector out = x;
  for (unsigned i = 0; i < dim(); ++i) {
    const std::uint64_t c = out[pivots_[i]];
    if (c == 0) continue;
    const auto r = row(i);
    for (unsigned k = 0; k < space_.n(); ++k) {
      out[k] = static_cast<Residue>((out[k] + (p - c) * r[k]) % p);
    }
  }
  return out;
}

void Subspace::for_each_element(const std::function<void(PointIndex)>& fn) const {
  const unsigned n = space_.n();
  const std::uint32_t p = space_.p();
  std::vector<Residue> coeffs(dim(), 0);
  std::vector<Residue> acc(n, 0);
  // Odometer over coefficient tuples; acc tracks sum_i coeffs[i] * row(i).
  while (true) {
    PointIndex idx = 0;
    for (unsigned k = n; k-- > 0;) idx = idx * p + acc[k];
    fn(idx);
    unsigned i = 0;
    for (; i < dim(); ++i) {
      const auto r = row(i);
      for (unsigned k = 0; k < n; ++k) acc[k] = (acc[k] + r[k]) % p;
      if (++coeffs[i] < p) break;
      coeffs[i] = 0;  // acc wrapped back since p * row == 0
    }
    if (i == dim()) break;
  }
}

std::vector<PointIndex> Subspace::elements() const {
  std::vector<PointIndex> out;
  out.reserve(element_count());
  for_each_element([&](PointIndex idx) { out.push_back(idx); });
  return out;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.space_.p() <=> b.space_.p(); c != 0) return c;
  if (auto c = a.space_.n() <=> b.space_.n(); c != 0) return c;
  if (auto c = a.pivots_ <=> b.pivots_; c != 0) return c;
  return a.rows_ <=> b.rows_;
}

bool AffinePlane::contains(const FpVector& x) const { return direction.reduce(x) == rep; }

AffinePlane coset_of(const Subspace& W, const FpVector& x) { return AffinePlane{W, W.reduce(x)}; }

CosetIndexer::CosetIndexer(const Subspace& W)
    : W_(W),
      p_(W.space().p()),
      coset_count_(W.space().pow(W.codim())),
      free_(W.free_columns()) {
  terms_.resize(free_.size());
  for (std::size_t j = 0; j < free_.size(); ++j) {
    for (unsigned i = 0; i < W.dim(); ++i) {
      const Residue b = W.row(i)[free_[j]];
      if (b != 0) terms_[j].push_back({W.pivots()[i], static_cast<Residue>(p_ - b)});
    }
  }
}

std::uint64_t CosetIndexer::label(std::span<const Residue> x) const {
  std::uint64_t out = 0;
  for (std::size_t j = free_.size(); j-- > 0;) {
    std::uint64_t r = x[free_[j]];
    for (const Term& t : terms_[j]) r += std::uint64_t{t.coeff} * x[t.column];
    out = out * p_ + r % p_;
  }
  return out;
}

AffinePlane CosetIndexer::plane(std::uint64_t label) const {
  if (label >= coset_count_) throw ContractViolation("coset label out of range");
  FpVector rep = FpVector::zero(W_.space().n());
  for (unsigned f : free_) {
    rep[f] = static_cast<Residue>(label % p_);
    label /= p_;
  }
  return AffinePlane{W_, std::move(rep)};
}

Subspace perp(const Subspace& W) {
  const AmbientSpace& space = W.space();
  const std::uint32_t p = space.p();
  std::vector<FpVector> gens;
  for (unsigned f : W.free_columns()) {
    FpVector v = FpVector::zero(space.n());
    v[f] = 1;
    for (unsigned i = 0; i < W.dim(); ++i) {
      v[W.pivots()[i]] = static_cast<Residue>((p - W.row(i)[f]) % p);
    }
    gens.push_back(std::move(v));
  }
  return Subspace::span(space, gens);
}

class GrassmannianWalker {
 public:
  static void walk(const AmbientSpace& space, unsigned m,
                   const std::function<void(const Subspace&)>& fn) {
    const unsigned n = space.n();
    const std::uint32_t p = space.p();
    std::vector<unsigned> pivots(m);
    std::iota(pivots.begin(), pivots.end(), 0U);
    while (true) {
      std::vector<std::size_t> free_slots;
      std::vector<Residue> rows(std::size_t{m} * n, 0);
      for (unsigned i = 0; i < m; ++i) {
        rows[std::size_t{i} * n + pivots[i]] = 1;
        for (unsigned c = pivots[i] + 1; c < n; ++c) {
          if (!std::binary_search(pivots.begin(), pivots.end(), c)) {
            free_slots.push_back(std::size_t{i} * n + c);
          }
        }
      }
      std::vector<Residue> digits(free_slots.size(), 0);
      while (true) {
        for (std::size_t k = 0; k < free_slots.size(); ++k) rows[free_slots[k]] = digits[k];
        fn(Subspace(space, rows, pivots));
        std::size_t k = digits.size();
        while (k > 0 && ++digits[k - 1] == p) digits[--k] = 0;
        if (k == 0) break;
      }
      // Next pivot pattern in lexicographic order.
      int i = static_cast<int>(m) - 1;
      while (i >= 0 && pivots[i] == n - m + static_cast<unsigned>(i)) --i;
      if (i < 0) break;
      ++pivots[i];
      for (unsigned j = static_cast<unsigned>(i) + 1; j < m; ++j) pivots[j] = pivots[j - 1] + 1;
    }
  }
};

void for_each_subspace(const AmbientSpace& space, unsigned m,
                       const std::function<void(const Subspace&)>& fn, std::uint64_t budget) {
  if (m > space.n()) throw ContractViolation("subspace dimension exceeds n");
  const GaussCount count = gaussian_binomial(static_cast<int>(space.n()), static_cast<int>(m),
                                             space.p());
  if (count > budget) {
    throw BudgetExceeded("G(" + std::to_string(space.n()) + "," + std::to_string(m) + ") over F_" +
                         std::to_string(space.p()) + " has " + count.str() +
                         " subspaces, over the budget of " + std::to_string(budget));
  }
  GrassmannianWalker::walk(space, m, fn);
}

std::vector<Subspace> enumerate_grassmannian(const AmbientSpace& space, unsigned m,
                                             std::uint64_t budget) {
  std::vector<Subspace> out;
  for_each_subspace(space, m, [&](const Subspace& W) { out.push_back(W); }, budget);
  return out;
}

std::vector<AffinePlane> enumerate_affine(const AmbientSpace& space, unsigned m,
                                          std::uint64_t budget) {
  if (m > space.n()) throw ContractViolation("plane dimension exceeds n");
  const GaussCount total =
      gaussian_binomial(static_cast<int>(space.n()), static_cast<int>(m), space.p()) *
      space.pow(space.n() - m);
  if (total > budget) {
    throw BudgetExceeded("A(" + std::to_string(space.n()) + "," + std::to_string(m) + ") has " +
                         total.str() + " planes, over the budget of " + std::to_string(budget));
  }
  std::vector<AffinePlane> out;
  for_each_subspace(
      space, m,
      [&](const Subspace& W) {
        const CosetIndexer indexer(W);
        for (std::uint64_t label = 0; label < indexer.coset_count(); ++label) {
          out.push_back(indexer.plane(label));
        }
      },
      budget);
  return out;
}

namespace {

void check_nonzero_in_space(const AmbientSpace& space, const FpVector& xi, unsigned m) {
  check_in_space(space, xi);
  if (xi.is_zero()) throw ContractViolation("xi must be nonzero");
  if (m > space.n()) throw ContractViolation("subspace dimension exceeds n");
}

}  // namespace

GaussCount count_subspaces_containing(const AmbientSpace& space, const FpVector& xi, unsigned m) {
  check_nonzero_in_space(space, xi, m);
  return subspace_count(static_cast<int>(space.n()) - 1, static_cast<int>(m) - 1, space.p());
}

GaussCount count_subspaces_with_perp_containing(const AmbientSpace& space, const FpVector& xi,
                                                unsigned m) {
  check_nonzero_in_space(space, xi, m);
  return subspace_count(static_cast<int>(space.n()) - 1, static_cast<int>(m), space.p());
}

SubspaceCountCheck verify_subspace_counts(const AmbientSpace& space, const FpVector& xi,
                                          unsigned m, std::uint64_t budget) {
  SubspaceCountCheck check;
  check.containing_closed = count_subspaces_containing(space, xi, m);
  check.perp_closed = count_subspaces_with_perp_containing(space, xi, m);
  std::uint64_t containing = 0;
  std::uint64_t annihilating = 0;
  for_each_subspace(
      space, m,
      [&](const Subspace& V) {
        if (V.contains(xi)) ++containing;
        bool orthogonal = true;
        for (unsigned i = 0; i < V.dim() && orthogonal; ++i) {
          orthogonal = dot(space, V.basis_vector(i), xi) == 0;
        }
        if (orthogonal) ++annihilating;
      },
      budget);
  check.containing_enumerated = containing;
  check.perp_enumerated = annihilating;
  return check;
}

void write_subspace(std::ostream& out, const Subspace& W) {
  const AmbientSpace& space = W.space();
  out << "subspace p=" << space.p() << " n=" << space.n() << " m=" << W.dim() << '\n';
  for (unsigned i = 0; i < W.dim(); ++i) {
    const auto r = W.row(i);
    for (unsigned k = 0; k < space.n(); ++k) {
      if (k) out << ',';
      out << r[k];
    }
    out << '\n';
  }
}

Subspace read_subspace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("missing subspace header");
  std::istringstream header(line);
  std::string magic, ptok, ntok, mtok;
  header >> magic >> ptok >> ntok >> mtok;
  auto keyed = [](const std::string& tok, const std::string& key) -> std::uint64_t {
    if (tok.rfind(key, 0) != 0) throw FormatError("expected '" + key + "' in subspace header");
    try {
      std::size_t used = 0;
      const auto v = std::stoull(tok.substr(key.size()), &used);
      if (used != tok.size() - key.size()) throw FormatError("bad number in subspace header");
      return v;
    } catch (const std::logic_error&) {
      throw FormatError("bad number in subspace header");
    }
  };
  if (magic != "subspace") throw FormatError("missing 'subspace' header");
  const auto p = keyed(ptok, "p=");
  const auto n = keyed(ntok, "n=");
  const auto m = keyed(mtok, "m=");
  if (n == 0 || n > 64 || m > n) throw FormatError("bad subspace dimensions");
  const AmbientSpace space = [&] {
    try {
      return AmbientSpace(p, static_cast<unsigned>(n));
    } catch (const std::exception& e) {
      throw FormatError(e.what());
    }
  }();
  std::vector<FpVector> rows;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw FormatError("subspace has fewer rows than m");
    std::vector<Residue> coords;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      try {
        std::size_t used = 0;
        const auto c = std::stoull(cell, &used);
        if (used != cell.size() || c >= p) throw FormatError("bad residue in subspace row");
        coords.push_back(static_cast<Residue>(c));
      } catch (const std::logic_error&) {
        throw FormatError("bad residue in subspace row");
      }
    }
    if (coords.size() != n) throw FormatError("subspace row has wrong length");
    rows.emplace_back(std::move(coords));
  }
  Subspace W = Subspace::span(space, rows);
  if (W.dim() != m || W.basis() != rows) throw FormatError("subspace rows are not in RREF");
  return W;
}

}  // namespace ffproj
