#include "cheeger/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>

namespace cheeger::sdp {

void Problem::add_equality(std::vector<Entry> entries, double rhs) {
  rows_.push_back({std::move(entries), {}, rhs});
}

int Problem::add_slack(double cost, double upper) {
  slack_cost_.push_back(cost);
  slack_upper_.push_back(upper);
  return static_cast<int>(slack_cost_.size()) - 1;
}

void Problem::add_less_equal(std::vector<Entry> entries, double rhs, double slack_bound) {
  int s = add_slack(0.0, slack_bound);
  rows_.push_back({std::move(entries), {{s, 1.0}}, rhs});
}

void Problem::add_greater_equal(std::vector<Entry> entries, double rhs, double slack_bound) {
  int s = add_slack(0.0, slack_bound);
  rows_.push_back({std::move(entries), {{s, -1.0}}, rhs});
}

double Problem::apply(const std::vector<Entry>& entries, const Eigen::MatrixXd& x) {
  double total = 0.0;
  for (const auto& e : entries) total += e.row == e.col ? e.value * x(e.row, e.col) : 2.0 * e.value * x(e.row, e.col);
  return total;
}

void Problem::write_triplets(std::ostream& out) const {
  out << dim_ << ' ' << rows_.size() << ' ' << slack_cost_.size() << '\n';
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      if (objective_(i, j) != 0.0) out << "c " << i << ' ' << j << ' ' << objective_(i, j) << '\n';
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& e : rows_[r].entries) out << "a " << r << ' ' << e.row << ' ' << e.col << ' ' << e.value << '\n';
    for (auto [s, v] : rows_[r].slack_terms) out << "s " << r << ' ' << s << ' ' << v << '\n';
    out << "b " << r << ' ' << rows_[r].rhs << '\n';
  }
}

std::string to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kMaxIterations: return "max-iterations";
    case Status::kNumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd symmetrized(const MatrixXd& a) { return 0.5 * (a + a.transpose()); }

struct Operator {
  int n = 0;
  int m = 0;
  int ns = 0;
  const Problem* problem = nullptr;
  std::vector<bool> dense;
  std::vector<MatrixXd> dense_rows;
  MatrixXd slack_matrix;  // m x ns
  VectorXd b;
  VectorXd slack_cost;

  explicit Operator(const Problem& p) : n(p.dim()), m(p.num_constraints()), ns(p.num_slacks()), problem(&p) {
    dense.resize(static_cast<std::size_t>(m));
    dense_rows.resize(static_cast<std::size_t>(m));
    slack_matrix = MatrixXd::Zero(m, ns);
    b.resize(m);
    slack_cost.resize(ns);
    for (int s = 0; s < ns; ++s) slack_cost(s) = p.slack_cost()[static_cast<std::size_t>(s)];
    for (int i = 0; i < m; ++i) {
      const auto& row = p.constraints()[static_cast<std::size_t>(i)];
      b(i) = row.rhs;
      for (auto [s, v] : row.slack_terms) slack_matrix(i, s) += v;
      if (static_cast<int>(row.entries.size()) > n) {
        dense[static_cast<std::size_t>(i)] = true;
        MatrixXd a = MatrixXd::Zero(n, n);
        for (const auto& e : row.entries) {
          a(e.row, e.col) += e.value;
          if (e.row != e.col) a(e.col, e.row) += e.value;
        }
        dense_rows[static_cast<std::size_t>(i)] = std::move(a);
      }
    }
  }

  const std::vector<Entry>& entries(int i) const { return problem->constraints()[static_cast<std::size_t>(i)].entries; }

  // Expects a symmetric argument.
  VectorXd apply(const MatrixXd& x, const VectorXd& s) const {
    VectorXd out(m);
    for (int i = 0; i < m; ++i) out(i) = Problem::apply(entries(i), x);
    if (ns > 0) out += slack_matrix * s;
    return out;
  }

  MatrixXd adjoint(const VectorXd& y) const {
    MatrixXd out = MatrixXd::Zero(n, n);
    for (int i = 0; i < m; ++i) {
      if (y(i) == 0.0) continue;
      for (const auto& e : entries(i)) {
        out(e.row, e.col) += y(i) * e.value;
        if (e.row != e.col) out(e.col, e.row) += y(i) * e.value;
      }
    }
    return out;
  }

  // M_ij = tr(A_i X A_j Z^{-1}).
  MatrixXd schur(const MatrixXd& x, const MatrixXd& zinv) const {
    MatrixXd schur_matrix(m, m);
    MatrixXd g(n, n);
    for (int i = 0; i < m; ++i) {
      if (dense[static_cast<std::size_t>(i)]) {
        g.noalias() = x * dense_rows[static_cast<std::size_t>(i)] * zinv;
      } else {
        g.setZero();
        for (const auto& e : entries(i)) {
          g.noalias() += e.value * x.col(e.row) * zinv.row(e.col);
          if (e.row != e.col) g.noalias() += e.value * x.col(e.col) * zinv.row(e.row);
        }
      }
      for (int j = 0; j < m; ++j) {
        double v = 0.0;
        if (dense[static_cast<std::size_t>(j)]) {
          v = dense_rows[static_cast<std::size_t>(j)].cwiseProduct(g).sum();
        } else {
          for (const auto& e : entries(j))
            v += e.row == e.col ? e.value * g(e.row, e.col) : e.value * (g(e.row, e.col) + g(e.col, e.row));
        }
        schur_matrix(i, j) = v;
      }
    }
    return 0.5 * (schur_matrix + schur_matrix.transpose());
  }
};

double psd_step(const MatrixXd& x, const MatrixXd& dx) {
  Eigen::LLT<MatrixXd> chol(x);
  if (chol.info() != Eigen::Success) return 0.0;
  MatrixXd l = chol.matrixL();
  MatrixXd w = l.triangularView<Eigen::Lower>().solve(dx);
  MatrixXd v = l.triangularView<Eigen::Lower>().solve(w.transpose());
  v = symmetrized(v);
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(v, Eigen::EigenvaluesOnly);
  double lmin = eig.eigenvalues().minCoeff();
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

double ratio_step(const VectorXd& s, const VectorXd& ds) {
  double step = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.size(); ++i)
    if (ds(i) < 0.0) step = std::min(step, -s(i) / ds(i));
  return step;
}

double inner(const MatrixXd& a, const MatrixXd& b) { return a.cwiseProduct(b).sum(); }

} // namespace

double certified_bound(const Problem& problem, const Eigen::VectorXd& y) {
  Operator op(problem);
  double bound = op.b.dot(y);
  if (!problem.trace_bound()) return bound;
  MatrixXd z = problem.objective() - op.adjoint(y);
  z = symmetrized(z);
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(z, Eigen::EigenvaluesOnly);
  bound += *problem.trace_bound() * std::min(0.0, eig.eigenvalues().minCoeff());
  if (op.ns > 0) {
    VectorXd zs = op.slack_cost - op.slack_matrix.transpose() * y;
    for (int l = 0; l < op.ns; ++l)
      bound += problem.slack_upper()[static_cast<std::size_t>(l)] * std::min(0.0, zs(l));
  }
  return bound;
}

Solution solve(const Problem& problem, const Settings& settings) {
  const Operator op(problem);
  const int n = op.n;
  const int m = op.m;
  const int ns = op.ns;
  const MatrixXd& c = problem.objective();
  const MatrixXd identity = MatrixXd::Identity(n, n);

  double norm_b = op.b.lpNorm<Eigen::Infinity>();
  double norm_c = c.norm();
  double max_row = 0.0;
  for (int i = 0; i < m; ++i) {
    double r = 0.0;
    for (const auto& e : op.entries(i)) r += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
    max_row = std::max(max_row, std::sqrt(r));
  }
  double primal_scale = std::max({10.0, std::sqrt(static_cast<double>(n)), n * (1.0 + norm_b) / (1.0 + max_row)});
  double dual_scale = std::max({10.0, std::sqrt(static_cast<double>(n)), norm_c, max_row});

  MatrixXd x = primal_scale * identity;
  MatrixXd z = dual_scale * identity;
  VectorXd y = VectorXd::Zero(m);
  VectorXd s = VectorXd::Constant(ns, primal_scale);
  VectorXd zs = VectorXd::Constant(ns, dual_scale);
  const double total_dim = static_cast<double>(n + ns);

  Solution out;
  out.status = Status::kMaxIterations;

  auto record = [&](int iter) {
    out.x = x;
    out.slacks = s;
    out.y = y;
    out.z = z;
    out.iterations = iter;
    out.primal_objective = inner(c, x) + op.slack_cost.dot(s);
    out.dual_objective = op.b.dot(y);
    out.relative_gap = std::abs(out.primal_objective - out.dual_objective) /
                       (1.0 + std::abs(out.primal_objective) + std::abs(out.dual_objective));
  };

  for (int iter = 0; iter <= settings.max_iterations; ++iter) {
    VectorXd rp = op.b - op.apply(x, s);
    MatrixXd rd = c - op.adjoint(y) - z;
    VectorXd rds = op.slack_cost - op.slack_matrix.transpose() * y - zs;
    double mu = (inner(x, z) + s.dot(zs)) / total_dim;

    record(iter);
    out.primal_infeasibility = rp.norm() / (1.0 + norm_b);
    out.dual_infeasibility = std::sqrt(rd.squaredNorm() + rds.squaredNorm()) / (1.0 + norm_c);
    if (out.relative_gap <= settings.gap_tolerance && out.primal_infeasibility <= settings.feasibility_tolerance &&
        out.dual_infeasibility <= settings.feasibility_tolerance) {
      out.status = Status::kOptimal;
      break;
    }
    if (iter == settings.max_iterations) break;

    Eigen::LLT<MatrixXd> zchol(z);
    if (zchol.info() != Eigen::Success) {
      out.status = Status::kNumericalFailure;
      break;
    }
    MatrixXd zinv = zchol.solve(identity);
    zinv = symmetrized(zinv);

    MatrixXd schur = op.schur(x, zinv);
    if (std::getenv("SDP_DEBUG")) std::fprintf(stderr, "M-had %g xsym %g zsym %g\n", (schur - x.cwiseProduct(zinv)).norm(), (x-x.transpose()).norm(), (zinv-zinv.transpose()).norm());
    VectorXd ratio = ns > 0 ? VectorXd(s.cwiseQuotient(zs)) : VectorXd();
    if (ns > 0) schur += op.slack_matrix * ratio.asDiagonal() * op.slack_matrix.transpose();
    Eigen::LLT<MatrixXd> mchol(schur);
    bool use_ldlt = mchol.info() != Eigen::Success;
    Eigen::LDLT<MatrixXd> mldlt;
    if (use_ldlt) {
      mldlt.compute(schur);
      if (mldlt.info() != Eigen::Success) {
        out.status = Status::kNumericalFailure;
        break;
      }
    }
    MatrixXd x_rd_zinv = x * rd * zinv;

    // rc_zinv = R_c Z^{-1}, rcs = slack complementarity target.
    auto direction = [&](const MatrixXd& rc_zinv, const VectorXd& rcs, MatrixXd& dx, VectorXd& dy, MatrixXd& dz,
                         VectorXd& ds, VectorXd& dzs) {
      MatrixXd w = rc_zinv - x_rd_zinv;
      w = symmetrized(w);
      VectorXd rhs = rp;
      VectorXd slack_part;
      if (ns > 0) slack_part = rcs.cwiseQuotient(zs) - ratio.cwiseProduct(rds);
      else slack_part = VectorXd();
      rhs -= op.apply(w, ns > 0 ? slack_part : VectorXd::Zero(0));
      dy = use_ldlt ? VectorXd(mldlt.solve(rhs)) : VectorXd(mchol.solve(rhs));
      if (std::getenv("SDP_DEBUG")) { MatrixXd dzz = rd - op.adjoint(dy); MatrixXd dxx = rc_zinv - x * dzz * zinv; dxx = 0.5*(dxx+dxx.transpose()); std::fprintf(stderr, "resid %g msolve %g\n", (op.apply(dxx, VectorXd::Zero(0)) - rp).norm(), (schur*dy-rhs).norm()); }
      dz = rd - op.adjoint(dy);
      dx = rc_zinv - x * dz * zinv;
      dx = symmetrized(dx);
      if (ns > 0) {
        dzs = rds - op.slack_matrix.transpose() * dy;
        ds = rcs.cwiseQuotient(zs) - ratio.cwiseProduct(dzs);
      } else {
        dzs = VectorXd();
        ds = VectorXd();
      }
    };

    MatrixXd dx_a, dz_a;
    VectorXd dy_a, ds_a, dzs_a;
    VectorXd rcs_a = ns > 0 ? VectorXd(-s.cwiseProduct(zs)) : VectorXd();
    direction(-x, rcs_a, dx_a, dy_a, dz_a, ds_a, dzs_a);

    double ap = std::min({1.0, psd_step(x, dx_a), ns > 0 ? ratio_step(s, ds_a) : 1.0});
    double ad = std::min({1.0, psd_step(z, dz_a), ns > 0 ? ratio_step(zs, dzs_a) : 1.0});
    double mu_aff = inner(x + ap * dx_a, z + ad * dz_a);
    if (ns > 0) mu_aff += (s + ap * ds_a).dot(zs + ad * dzs_a);
    mu_aff /= total_dim;
    double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    MatrixXd rc_zinv = sigma * mu * zinv - x - dx_a * dz_a * zinv;
    VectorXd rcs;
    if (ns > 0) rcs = VectorXd::Constant(ns, sigma * mu) - s.cwiseProduct(zs) - ds_a.cwiseProduct(dzs_a);
    MatrixXd dx, dz;
    VectorXd dy, ds, dzs;
    direction(rc_zinv, rcs, dx, dy, dz, ds, dzs);

    ap = std::min(1.0, settings.step_fraction * std::min(psd_step(x, dx), ns > 0 ? ratio_step(s, ds) : 1e300));
    ad = std::min(1.0, settings.step_fraction * std::min(psd_step(z, dz), ns > 0 ? ratio_step(zs, dzs) : 1e300));
    if (!(ap > 1e-12) || !(ad > 1e-12) || !dy.allFinite()) {
      out.status = Status::kNumericalFailure;
      break;
    }
    x += ap * dx;
    z += ad * dz;
    y += ad * dy;
    if (ns > 0) {
      s += ap * ds;
      zs += ad * dzs;
    }
  }
  out.certified_lower_bound = problem.trace_bound() ? certified_bound(problem, out.y) : out.dual_objective;
  return out;
}

} // namespace cheeger::sdp
