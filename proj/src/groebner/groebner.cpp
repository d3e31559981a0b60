#include "opgp/groebner/groebner.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "opgp/errors.hpp"

namespace opgp {

namespace {

void require_rank(const ModuleVector& v, std::size_t rank, const char* context) {
  if (v.size() != rank) {
    throw DimensionMismatch(std::string(context) + ": vector length " + std::to_string(v.size()) +
                            " does not match module rank " + std::to_string(rank));
  }
}

// p -= c * t * g, with t acting from the left.
void subtract_multiple(ModuleVector& p, const Monomial& t, const Rational& c, const ModuleVector& g) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (g[k].is_zero()) continue;
    p[k] -= mul_term_left(t, c, g[k]);
  }
}

ModuleVector scaled(const ModuleVector& v, const Rational& c) {
  ModuleVector out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(e.scaled(c));
  return out;
}

ModuleVector make_monic(const ModuleVector& v) {
  const auto lt = leading_term(v);
  if (!lt || lt->coeff == 1) return v;
  return scaled(v, 1 / lt->coeff);
}

std::size_t term_count(const ModuleVector& v) {
  std::size_t n = 0;
  for (const auto& e : v) n += e.terms().size();
  return n;
}

// Divides v by the listed generators; quotients are accumulated when requested.
ModuleVector reduce(ModuleVector p, const std::vector<ModuleVector>& basis,
                    const std::vector<LeadingTerm>& leads, std::vector<OrePoly>* quotients,
                    const RingPtr& ring) {
  ModuleVector r = zero_vector(ring, p.size());
  while (auto lt = leading_term(p)) {
    std::size_t i = 0;
    for (; i < basis.size(); ++i) {
      if (leads[i].component == lt->component && leads[i].monomial.divides(lt->monomial)) break;
    }
    if (i < basis.size()) {
      const Monomial t = leads[i].monomial.quotient_of(lt->monomial);
      const Rational c = lt->coeff / leads[i].coeff;
      subtract_multiple(p, t, c, basis[i]);
      if (quotients) (*quotients)[i] += OrePoly::monomial(ring, t, c);
    } else {
      const OrePoly term = OrePoly::monomial(ring, lt->monomial, lt->coeff);
      p[lt->component] -= term;
      r[lt->component] += term;
    }
  }
  return r;
}

// Integer coefficients with content 1 and a positive leading coefficient.
ModuleVector primitive(const ModuleVector& v) {
  mpz_class den = 1;
  mpz_class num = 0;
  for (const auto& e : v) {
    for (const auto& t : e.terms()) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
    }
  }
  if (num == 0) return v;
  Rational scale(den, num);
  scale.canonicalize();
  if (leading_term(v)->coeff < 0) scale = -scale;
  return scale == 1 ? v : scaled(v, scale);
}

// Divides p and r by the gcd of all their coefficients (integral inputs).
void remove_content(ModuleVector& p, ModuleVector& r) {
  mpz_class g = 0;
  for (const auto* v : {&p, &r}) {
    for (const auto& e : *v) {
      for (const auto& t : e.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
        if (g == 1) return;
      }
    }
  }
  if (g == 0) return;
  const Rational inv(mpz_class(1), g);
  for (auto* v : {&p, &r}) {
    for (auto& e : *v) e = e.scaled(inv);
  }
}

// Fraction-free division by the active generators, preferring the shortest
// divisor; integral inputs stay integral. The remainder is determined up to
// a nonzero scalar.
ModuleVector reduce_integral(ModuleVector p, const std::vector<ModuleVector>& basis,
                             const std::vector<LeadingTerm>& leads, const std::vector<bool>& active,
                             const RingPtr& ring) {
  std::vector<std::size_t> sizes;
  sizes.reserve(basis.size());
  for (const auto& g : basis) sizes.push_back(term_count(g));
  ModuleVector r = zero_vector(ring, p.size());
  std::size_t steps = 0;
  while (auto lt = leading_term(p)) {
    std::size_t best = basis.size();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!active[i] || leads[i].component != lt->component || !leads[i].monomial.divides(lt->monomial)) continue;
      if (best == basis.size() || sizes[i] < sizes[best]) best = i;
    }
    if (best == basis.size()) {
      const OrePoly term = OrePoly::monomial(ring, lt->monomial, lt->coeff);
      p[lt->component] -= term;
      r[lt->component] += term;
      continue;
    }
    mpz_class a = lt->coeff.get_num();
    mpz_class b = leads[best].coeff.get_num();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= g;
    b /= g;
    if (b != 1) {
      const Rational bq(b);
      for (auto& e : p) e = e.scaled(bq);
      for (auto& e : r) e = e.scaled(bq);
    }
    subtract_multiple(p, leads[best].monomial.quotient_of(lt->monomial), Rational(a), basis[best]);
    if (++steps % 8 == 0) remove_content(p, r);
  }
  return r;
}

struct Pair {
  std::size_t i;
  std::size_t j;
  std::size_t component;
  Monomial lcm;
};

bool pair_before(const Pair& a, const Pair& b) {
  const auto c = compare_positions(a.component, a.lcm, b.component, b.lcm);
  if (c != 0) return c < 0;
  if (a.j != b.j) return a.j < b.j;
  return a.i < b.i;
}

class Buchberger {
 public:
  Buchberger(RingPtr ring, std::size_t rank, const BuchbergerOptions& options)
      : ring_(std::move(ring)), rank_(rank), options_(options) {}

  void insert(const ModuleVector& v) {
    if (is_zero(v)) return;
    ModuleVector r = reduce_integral(primitive(v), basis_, leads_, active_, ring_);
    if (is_zero(r)) return;
    add(primitive(r));
  }

  void run() {
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), pair_before);
      const Pair pair = *best;
      pairs_.erase(best);
      treated_.insert({pair.i, pair.j});
      if (chain_criterion(pair)) continue;
      if (++reductions_ > options_.max_pair_reductions) {
        throw ResourceError("Groebner basis computation exceeded " +
                            std::to_string(options_.max_pair_reductions) + " pair reductions");
      }
      const auto s = s_vector(basis_[pair.i], basis_[pair.j]);
      if (!s) continue;
      ModuleVector r = reduce_integral(*s, basis_, leads_, active_, ring_);
      if (!is_zero(r)) add(primitive(r));
    }
  }

  GroebnerBasis finish() {
    // Drop generators whose leading term is divisible by another one.
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      bool redundant = false;
      for (std::size_t m = 0; m < basis_.size() && !redundant; ++m) {
        if (m == k || leads_[m].component != leads_[k].component) continue;
        if (!leads_[m].monomial.divides(leads_[k].monomial)) continue;
        redundant = leads_[m].monomial != leads_[k].monomial || m < k;
      }
      if (!redundant) keep.push_back(k);
    }
    std::vector<ModuleVector> minimal;
    std::vector<LeadingTerm> minimal_leads;
    for (auto k : keep) {
      minimal.push_back(basis_[k]);
      minimal_leads.push_back(leads_[k]);
    }
    GroebnerBasis gb;
    gb.ring = ring_;
    gb.rank = rank_;
    gb.reduced = true;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<ModuleVector> others;
      std::vector<LeadingTerm> other_leads;
      for (std::size_t m = 0; m < minimal.size(); ++m) {
        if (m == k) continue;
        others.push_back(minimal[m]);
        other_leads.push_back(minimal_leads[m]);
      }
      gb.generators.push_back(make_monic(reduce(minimal[k], others, other_leads, nullptr, ring_)));
    }
    std::sort(gb.generators.begin(), gb.generators.end(), [](const ModuleVector& a, const ModuleVector& b) {
      const auto la = *leading_term(a);
      const auto lb = *leading_term(b);
      return compare_positions(la.component, la.monomial, lb.component, lb.monomial) > 0;
    });
    return gb;
  }

 private:
  // Some generator k divides the lcm and both pairs (i,k), (j,k) are
  // already treated, so the S-vector reduces to zero.
  bool chain_criterion(const Pair& pair) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == pair.i || k == pair.j || leads_[k].component != pair.component) continue;
      if (!leads_[k].monomial.divides(pair.lcm)) continue;
      if (!treated_.count(std::minmax(pair.i, k)) || !treated_.count(std::minmax(pair.j, k))) continue;
      return true;
    }
    return false;
  }

  void add(ModuleVector v) {
    const LeadingTerm lead = *leading_term(v);
    const bool product_criterion = rank_ == 1 && !ring_->is_weyl();
    const std::size_t n = basis_.size();
    // Old pairs whose lcm the new leading term divides strictly are covered
    // by the pairs with the new generator.
    std::erase_if(pairs_, [&](const Pair& p) {
      if (p.component != lead.component || !active_[p.i] || !active_[p.j]) return false;
      if (!lead.monomial.divides(p.lcm)) return false;
      if (leads_[p.i].monomial.lcm(lead.monomial) == p.lcm || leads_[p.j].monomial.lcm(lead.monomial) == p.lcm) {
        return false;
      }
      treated_.insert({p.i, p.j});
      return true;
    });
    for (std::size_t k = 0; k < n; ++k) {
      if (!active_[k] || leads_[k].component != lead.component) continue;
      // a generator whose leading term the new one divides gets no further pairs
      const bool redundant = lead.monomial.divides(leads_[k].monomial);
      if (product_criterion && leads_[k].monomial.coprime(lead.monomial)) {
        treated_.insert({k, n});
      } else {
        pairs_.push_back(Pair{k, n, lead.component, leads_[k].monomial.lcm(lead.monomial)});
      }
      if (redundant) active_[k] = false;
    }
    basis_.push_back(std::move(v));
    leads_.push_back(lead);
    active_.push_back(true);
  }

  RingPtr ring_;
  std::size_t rank_;
  BuchbergerOptions options_;
  std::vector<ModuleVector> basis_;
  std::vector<LeadingTerm> leads_;
  std::vector<Pair> pairs_;
  std::vector<bool> active_;
  std::set<std::pair<std::size_t, std::size_t>> treated_;
  std::uint64_t reductions_ = 0;
};

std::vector<LeadingTerm> leading_terms(const GroebnerBasis& gb) {
  std::vector<LeadingTerm> leads;
  leads.reserve(gb.generators.size());
  for (const auto& g : gb.generators) leads.push_back(*leading_term(g));
  return leads;
}

}  // namespace

std::optional<LeadingTerm> leading_term(const ModuleVector& v) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_zero()) return LeadingTerm{k, v[k].leading().monomial, v[k].leading().coeff};
  }
  return std::nullopt;
}

std::strong_ordering compare_positions(std::size_t ca, const Monomial& ma, std::size_t cb,
                                       const Monomial& mb) {
  if (ca != cb) return cb <=> ca;
  return ma <=> mb;
}

bool is_zero(const ModuleVector& v) {
  return std::all_of(v.begin(), v.end(), [](const OrePoly& p) { return p.is_zero(); });
}

ModuleVector zero_vector(const RingPtr& ring, std::size_t rank) { return ModuleVector(rank, OrePoly(ring)); }

GroebnerBasis buchberger(const RingPtr& ring, std::size_t rank, std::vector<ModuleVector> gens,
                         const BuchbergerOptions& options) {
  Buchberger engine(ring, rank, options);
  for (const auto& g : gens) {
    require_rank(g, rank, "buchberger");
    for (const auto& e : g) require_same_ring(ring, e.ring(), "buchberger");
    engine.insert(g);
  }
  engine.run();
  return engine.finish();
}

GroebnerBasis buchberger(const OperatorMatrix& m, const BuchbergerOptions& options) {
  std::vector<ModuleVector> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return buchberger(m.ring(), m.cols(), std::move(rows), options);
}

Division divide(const ModuleVector& v, const GroebnerBasis& gb) {
  require_rank(v, gb.rank, "divide");
  Division out;
  out.quotients.assign(gb.generators.size(), OrePoly(gb.ring));
  out.remainder = reduce(v, gb.generators, leading_terms(gb), &out.quotients, gb.ring);
  return out;
}

ModuleVector normal_form(const ModuleVector& v, const GroebnerBasis& gb) {
  require_rank(v, gb.rank, "normal_form");
  return reduce(v, gb.generators, leading_terms(gb), nullptr, gb.ring);
}

std::optional<ModuleVector> s_vector(const ModuleVector& f, const ModuleVector& g) {
  const auto lf = leading_term(f);
  const auto lg = leading_term(g);
  if (!lf || !lg || lf->component != lg->component) return std::nullopt;
  const Monomial l = lf->monomial.lcm(lg->monomial);
  ModuleVector s(f.size(), OrePoly(f[lf->component].ring()));
  subtract_multiple(s, lf->monomial.quotient_of(l), -lg->coeff, f);
  subtract_multiple(s, lg->monomial.quotient_of(l), lf->coeff, g);
  return s;
}

bool is_groebner_basis(const GroebnerBasis& gb) {
  const auto leads = leading_terms(gb);
  for (std::size_t i = 0; i < gb.generators.size(); ++i) {
    for (std::size_t j = i + 1; j < gb.generators.size(); ++j) {
      const auto s = s_vector(gb.generators[i], gb.generators[j]);
      if (s && !is_zero(reduce(*s, gb.generators, leads, nullptr, gb.ring))) return false;
    }
  }
  return true;
}

}  // namespace opgp
