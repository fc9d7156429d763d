#include "amplitude_lab/restriction.hpp"

#include <cmath>
#include <sstream>

#include "amplitude_lab/amplitudes.hpp"
#include "amplitude_lab/errors.hpp"
#include "amplitude_lab/parallel.hpp"

namespace amplitude_lab {

namespace {

bool is_unitary(const Matrix& u, const Tolerances& tol) {
  if (u.rows() != u.cols() || !u.allFinite()) return false;
  const Matrix gram = u.adjoint() * u;
  return (gram - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol.num;
}

Matrix kron_identity(const Matrix& a, Index copies) {
  Matrix out = Matrix::Zero(a.rows() * copies, a.cols() * copies);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index s = 0; s < copies; ++s) out(i * copies + s, j * copies + s) = a(i, j);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// UnitalEmbedding

UnitalEmbedding::UnitalEmbedding(BlockAlgebra source, BlockAlgebra target,
                                 std::vector<std::vector<Index>> multiplicity,
                                 std::vector<std::optional<Matrix>> unitaries,
                                 const Tolerances& tol)
    : source_(std::move(source)),
      target_(std::move(target)),
      multiplicity_(std::move(multiplicity)),
      unitaries_(std::move(unitaries)) {
  if (unitaries_.empty()) unitaries_.resize(target_.num_blocks());
  if (multiplicity_.size() != target_.num_blocks() || unitaries_.size() != target_.num_blocks()) {
    fail(ErrorCode::InvalidEmbedding, "multiplicity matrix needs one row per target block");
  }
  for (std::size_t k = 0; k < target_.num_blocks(); ++k) {
    if (multiplicity_[k].size() != source_.num_blocks()) {
      fail(ErrorCode::InvalidEmbedding, "multiplicity matrix needs one column per source block");
    }
    Index total = 0;
    for (std::size_t l = 0; l < source_.num_blocks(); ++l) {
      if (multiplicity_[k][l] < 0) fail(ErrorCode::InvalidEmbedding, "negative multiplicity");
      total += multiplicity_[k][l] * source_.dim(l);
    }
    if (total != target_.dim(k)) {
      std::ostringstream msg;
      msg << "target block " << k << " has size " << target_.dim(k)
          << " but the multiplicities fill " << total;
      fail(ErrorCode::InvalidEmbedding, msg.str());
    }
    if (unitaries_[k]) {
      if (unitaries_[k]->rows() != target_.dim(k) || !is_unitary(*unitaries_[k], tol)) {
        fail(ErrorCode::InvalidEmbedding, "conjugating matrix is not a unitary of the target block");
      }
    }
  }
  // Injectivity (hence unitality of a nonzero map): every source block is used.
  for (std::size_t l = 0; l < source_.num_blocks(); ++l) {
    Index used = 0;
    for (std::size_t k = 0; k < target_.num_blocks(); ++k) used += multiplicity_[k][l];
    if (used == 0) fail(ErrorCode::InvalidEmbedding, "a source block is not embedded anywhere");
  }
}

UnitalEmbedding UnitalEmbedding::identity(const BlockAlgebra& algebra) {
  const std::size_t m = algebra.num_blocks();
  std::vector<std::vector<Index>> c(m, std::vector<Index>(m, 0));
  for (std::size_t k = 0; k < m; ++k) c[k][k] = 1;
  return {algebra, algebra, std::move(c)};
}

UnitalEmbedding UnitalEmbedding::ampliation(Index n, Index copies) {
  return {BlockAlgebra({n}), BlockAlgebra({n * copies}), {{copies}}};
}

Index UnitalEmbedding::summand_offset(std::size_t k, std::size_t l) const {
  Index off = 0;
  for (std::size_t j = 0; j < l; ++j) off += multiplicity_.at(k).at(j) * source_.dim(j);
  return off;
}

BlockOperator UnitalEmbedding::apply(const BlockOperator& a) const {
  detail::require_same_algebra(source_, a.algebra(), "UnitalEmbedding::apply");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < target_.num_blocks(); ++k) {
    Matrix block = Matrix::Zero(target_.dim(k), target_.dim(k));
    for (std::size_t l = 0; l < source_.num_blocks(); ++l) {
      const Index c = multiplicity_[k][l];
      if (c == 0) continue;
      const Index side = c * source_.dim(l);
      const Index off = summand_offset(k, l);
      block.block(off, off, side, side) = kron_identity(a.block(l), c);
    }
    if (unitaries_[k]) block = (*unitaries_[k]) * block * unitaries_[k]->adjoint();
    out.push_back(std::move(block));
  }
  return {target_, std::move(out)};
}

UnitalEmbedding compose(const UnitalEmbedding& outer, const UnitalEmbedding& inner) {
  if (!(outer.source() == inner.target())) {
    fail(ErrorCode::InvalidEmbedding, "compose: inner target differs from outer source");
  }
  const BlockAlgebra& src = inner.source();
  const BlockAlgebra& mid = inner.target();
  const BlockAlgebra& dst = outer.target();

  std::vector<std::vector<Index>> c(dst.num_blocks(), std::vector<Index>(src.num_blocks(), 0));
  std::vector<std::optional<Matrix>> unitaries(dst.num_blocks());

  for (std::size_t k = 0; k < dst.num_blocks(); ++k) {
    for (std::size_t l = 0; l < src.num_blocks(); ++l) {
      for (std::size_t j = 0; j < mid.num_blocks(); ++j) {
        c[k][l] += outer.multiplicity(k, j) * inner.multiplicity(j, l);
      }
    }
    // Middle-major layout: for each j, ι_in(a)_j ⊗ 1_{c_kj}. Stripping the
    // inner unitaries leaves ⊕_j ⊕_l a_l ⊗ 1_{c_in[j][l] c_kj}; `perm` maps
    // the composite standard position onto that layout.
    const Index side = dst.dim(k);
    Matrix perm = Matrix::Zero(side, side);
    Matrix inner_u = Matrix::Identity(side, side);
    bool has_inner_u = false;
    std::vector<Index> mid_offset(mid.num_blocks() + 1, 0);
    for (std::size_t j = 0; j < mid.num_blocks(); ++j) {
      mid_offset[j + 1] = mid_offset[j] + outer.multiplicity(k, j) * mid.dim(j);
    }
    Index std_offset = 0;
    for (std::size_t l = 0; l < src.num_blocks(); ++l) {
      const Index m_l = src.dim(l);
      const Index total_copies = c[k][l];
      Index copy_base = 0;
      for (std::size_t j = 0; j < mid.num_blocks(); ++j) {
        const Index ckj = outer.multiplicity(k, j);
        const Index cjl = inner.multiplicity(j, l);
        const Index copies = cjl * ckj;
        if (copies == 0) continue;
        const Index piece = mid_offset[j] + inner.summand_offset(j, l) * ckj;
        for (Index i = 0; i < m_l; ++i) {
          for (Index t = 0; t < copies; ++t) {
            const Index standard = std_offset + i * total_copies + copy_base + t;
            const Index layout = piece + i * copies + t;
            perm(layout, standard) = 1.0;
          }
        }
        copy_base += copies;
      }
      std_offset += m_l * total_copies;
    }
    for (std::size_t j = 0; j < mid.num_blocks(); ++j) {
      const Index ckj = outer.multiplicity(k, j);
      if (ckj == 0 || !inner.unitary(j)) continue;
      has_inner_u = true;
      inner_u.block(mid_offset[j], mid_offset[j], ckj * mid.dim(j), ckj * mid.dim(j)) =
          kron_identity(*inner.unitary(j), ckj);
    }
    const bool trivial_perm = perm.isIdentity();
    if (!outer.unitary(k) && !has_inner_u && trivial_perm) continue;
    Matrix u = has_inner_u ? Matrix(inner_u * perm) : perm;
    if (outer.unitary(k)) u = (*outer.unitary(k)) * u;
    unitaries[k] = std::move(u);
  }
  return {src, dst, std::move(c), std::move(unitaries)};
}

Functional restrict(const Functional& phi, const UnitalEmbedding& iota, const Tolerances& tol) {
  detail::require_same_algebra(iota.target(), phi.algebra(), "restrict");
  const BlockAlgebra& src = iota.source();
  std::vector<Matrix> out;
  for (Index m : src.dims()) out.push_back(Matrix::Zero(m, m));
  for (std::size_t k = 0; k < iota.target().num_blocks(); ++k) {
    const Matrix rotated = iota.unitary(k)
                               ? Matrix(iota.unitary(k)->adjoint() * phi.density(k) * (*iota.unitary(k)))
                               : phi.density(k);
    for (std::size_t l = 0; l < src.num_blocks(); ++l) {
      const Index c = iota.multiplicity(k, l);
      if (c == 0) continue;
      const Index off = iota.summand_offset(k, l);
      const Index m = src.dim(l);
      for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) {
          Complex s = 0.0;
          for (Index t = 0; t < c; ++t) s += rotated(off + i * c + t, off + j * c + t);
          out[l](i, j) += s;
        }
    }
  }
  return {src, std::move(out), tol};
}

// ---------------------------------------------------------------------------
// UcpMap

UcpMap::UcpMap(BlockAlgebra source, BlockAlgebra target, std::vector<KrausTerm> terms,
               const Tolerances& tol)
    : source_(std::move(source)), target_(std::move(target)), terms_(std::move(terms)) {
  std::vector<Matrix> unit;
  for (Index m : target_.dims()) unit.push_back(Matrix::Zero(m, m));
  for (const KrausTerm& t : terms_) {
    if (t.source_block >= source_.num_blocks() || t.target_block >= target_.num_blocks()) {
      fail(ErrorCode::ShapeError, "Kraus term refers to a missing block");
    }
    if (t.op.rows() != source_.dim(t.source_block) || t.op.cols() != target_.dim(t.target_block)) {
      fail(ErrorCode::ShapeError, "Kraus operator shape does not match its blocks");
    }
    unit[t.target_block] += t.op.adjoint() * t.op;
  }
  for (std::size_t k = 0; k < unit.size(); ++k) {
    const Index m = target_.dim(k);
    if ((unit[k] - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > tol.num) {
      fail(ErrorCode::NotUnital, "Kraus family does not sum to the identity");
    }
  }
}

UcpMap UcpMap::from_embedding(const UnitalEmbedding& iota) {
  std::vector<KrausTerm> terms;
  const BlockAlgebra& src = iota.source();
  for (std::size_t k = 0; k < iota.target().num_blocks(); ++k) {
    const Index side = iota.target().dim(k);
    for (std::size_t l = 0; l < src.num_blocks(); ++l) {
      const Index c = iota.multiplicity(k, l);
      const Index off = iota.summand_offset(k, l);
      for (Index s = 0; s < c; ++s) {
        Matrix e = Matrix::Zero(side, src.dim(l));
        for (Index i = 0; i < src.dim(l); ++i) e(off + i * c + s, i) = 1.0;
        const Matrix ue = iota.unitary(k) ? Matrix(*iota.unitary(k) * e) : e;
        terms.push_back({l, k, ue.adjoint()});
      }
    }
  }
  return {src, iota.target(), std::move(terms)};
}

UcpMap UcpMap::unitary_conjugation(const BlockAlgebra& algebra, std::span<const Matrix> unitaries,
                                   const Tolerances& tol) {
  if (unitaries.size() != algebra.num_blocks()) fail(ErrorCode::ShapeError, "one unitary per block");
  std::vector<KrausTerm> terms;
  for (std::size_t k = 0; k < unitaries.size(); ++k) terms.push_back({k, k, unitaries[k]});
  return {algebra, algebra, std::move(terms), tol};
}

UcpMap UcpMap::dephasing(Index n) {
  std::vector<KrausTerm> terms;
  for (Index i = 0; i < n; ++i) {
    Matrix p = Matrix::Zero(n, n);
    p(i, i) = 1.0;
    terms.push_back({0, 0, p});
  }
  return {BlockAlgebra({n}), BlockAlgebra({n}), std::move(terms)};
}

BlockOperator UcpMap::apply(const BlockOperator& a) const {
  detail::require_same_algebra(source_, a.algebra(), "UcpMap::apply");
  std::vector<Matrix> out;
  for (Index m : target_.dims()) out.push_back(Matrix::Zero(m, m));
  for (const KrausTerm& t : terms_) {
    out[t.target_block] += t.op.adjoint() * a.block(t.source_block) * t.op;
  }
  return {target_, std::move(out)};
}

Functional ucp_pullback(const UcpMap& map, const Functional& psi, const Tolerances& tol) {
  detail::require_same_algebra(map.target(), psi.algebra(), "ucp_pullback");
  std::vector<Matrix> out;
  for (Index n : map.source().dims()) out.push_back(Matrix::Zero(n, n));
  for (const KrausTerm& t : map.terms()) {
    out[t.source_block] += t.op * psi.density(t.target_block) * t.op.adjoint();
  }
  return {map.source(), std::move(out), tol};
}

// ---------------------------------------------------------------------------
// chains

SubalgebraChain::SubalgebraChain(std::vector<BlockAlgebra> algebras,
                                 std::vector<UnitalEmbedding> connecting,
                                 UnitalEmbedding final_embedding)
    : algebras_(std::move(algebras)), connecting_(std::move(connecting)) {
  if (algebras_.empty()) fail(ErrorCode::InvalidEmbedding, "chain needs at least one algebra");
  if (connecting_.size() + 1 != algebras_.size()) {
    fail(ErrorCode::InvalidEmbedding, "chain of T algebras needs T-1 connecting embeddings");
  }
  for (std::size_t n = 0; n < connecting_.size(); ++n) {
    if (!(connecting_[n].source() == algebras_[n]) || !(connecting_[n].target() == algebras_[n + 1])) {
      fail(ErrorCode::InvalidEmbedding, "connecting embedding does not match the chain algebras");
    }
  }
  if (!(final_embedding.source() == algebras_.back())) {
    fail(ErrorCode::InvalidEmbedding, "final embedding does not start at the last algebra");
  }
  std::vector<UnitalEmbedding> composites;
  composites.push_back(std::move(final_embedding));
  for (std::size_t n = connecting_.size(); n-- > 0;) {
    composites.push_back(compose(composites.back(), connecting_[n]));
  }
  to_ambient_.assign(composites.rbegin(), composites.rend());
}

std::vector<double> chain_amplitudes(const Functional& phi, const Functional& psi,
                                     const SubalgebraChain& chain, unsigned threads,
                                     const Tolerances& tol) {
  detail::require_same_algebra(chain.ambient(), phi.algebra(), "chain_amplitudes");
  detail::require_same_algebra(chain.ambient(), psi.algebra(), "chain_amplitudes");
  std::vector<double> out(chain.size());
  parallel_for(chain.size(), threads, [&](std::size_t n) {
    const UnitalEmbedding& iota = chain.to_ambient(n);
    out[n] = transition_amplitude(restrict(phi, iota, tol), restrict(psi, iota, tol), tol);
  });
  return out;
}

ProductChain build_product_chain(Index sites, Index cap) {
  if (sites < 1) fail(ErrorCode::DomainError, "product chain needs at least one site");
  if (sites > cap) {
    std::ostringstream msg;
    msg << "product chain with " << sites << " sites exceeds the cap of " << cap;
    fail(ErrorCode::TooLarge, msg.str());
  }
  std::vector<BlockAlgebra> algebras;
  std::vector<UnitalEmbedding> connecting;
  for (Index n = 1; n <= sites; ++n) algebras.emplace_back(std::vector<Index>{Index{1} << n});
  for (Index n = 1; n < sites; ++n) connecting.push_back(UnitalEmbedding::ampliation(Index{1} << n, 2));
  const BlockAlgebra ambient = algebras.back();
  return {ambient, SubalgebraChain(std::move(algebras), std::move(connecting),
                                   UnitalEmbedding::identity(ambient))};
}

Functional product_state(std::span<const Matrix> site_densities, const Tolerances& tol) {
  if (site_densities.empty()) fail(ErrorCode::DomainError, "product state needs at least one site");
  Matrix rho = site_densities.front();
  for (std::size_t s = 1; s < site_densities.size(); ++s) {
    const Matrix& next = site_densities[s];
    Matrix out(rho.rows() * next.rows(), rho.cols() * next.cols());
    for (Index i = 0; i < rho.rows(); ++i)
      for (Index j = 0; j < rho.cols(); ++j)
        out.block(i * next.rows(), j * next.cols(), next.rows(), next.cols()) = rho(i, j) * next;
    rho = std::move(out);
  }
  const Index side = rho.rows();
  return {BlockAlgebra({side}), {std::move(rho)}, tol};
}

namespace {

void require_distribution(std::span<const double> p, const Tolerances& tol) {
  double total = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) fail(ErrorCode::DomainError, "probabilities must be finite and >= 0");
    total += v;
  }
  if (std::abs(total - 1.0) > tol.num * static_cast<double>(p.size() + 1)) {
    fail(ErrorCode::DomainError, "probabilities must sum to 1");
  }
}

Functional diagonal_functional(std::span<const double> p) {
  std::vector<Matrix> blocks;
  for (double v : p) blocks.push_back(Matrix::Constant(1, 1, v));
  return {BlockAlgebra(std::vector<Index>(p.size(), 1)), std::move(blocks)};
}

}  // namespace

LumpedChain build_lumped_diagonal_chain(std::span<const double> p, std::span<const double> q,
                                        const Tolerances& tol) {
  if (p.empty() || p.size() != q.size()) {
    fail(ErrorCode::DomainError, "distributions must be nonempty and of equal length");
  }
  require_distribution(p, tol);
  require_distribution(q, tol);
  const std::size_t total = p.size();
  std::vector<BlockAlgebra> algebras;
  std::vector<UnitalEmbedding> connecting;
  for (std::size_t n = 1; n <= total; ++n) {
    algebras.emplace_back(std::vector<Index>(n, 1));
  }
  for (std::size_t n = 1; n < total; ++n) {
    // ℂ^n → ℂ^{n+1}: singletons stay, the tail atom splits in two.
    std::vector<std::vector<Index>> c(n + 1, std::vector<Index>(n, 0));
    for (std::size_t k = 0; k + 1 < n; ++k) c[k][k] = 1;
    c[n - 1][n - 1] = 1;
    c[n][n - 1] = 1;
    connecting.emplace_back(algebras[n - 1], algebras[n], std::move(c));
  }
  const BlockAlgebra ambient = algebras.back();
  return {SubalgebraChain(std::move(algebras), std::move(connecting), UnitalEmbedding::identity(ambient)),
          diagonal_functional(p), diagonal_functional(q)};
}

}  // namespace amplitude_lab
