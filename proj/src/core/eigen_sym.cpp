#include "mspinn/core/eigen_sym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mspinn {

namespace {

Matrix symmetrize(const Matrix& m) {
  if (m.rows() != m.cols()) throw config_error("sym_eig: matrix not square");
  Matrix a(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
  return a;
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(2.0 * s);
}

// Classic cyclic Jacobi with per-sweep thresholding. Rotations are applied to
// full rows/columns; Q accumulates the eigenvectors when requested.
void jacobi(Matrix& a, Matrix* q, const SymEigOptions& opts) {
  const int n = a.rows();
  const double scale = std::max(frobenius(a), 1e-300);
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off <= opts.tolerance * scale) return;
    // generous threshold early on, exact sweeps later
    const double thresh = sweep < 3 ? 0.2 * off / (n * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int r = p + 1; r < n; ++r) {
        const double apq = a(p, r);
        if (std::abs(apq) <= thresh) continue;
        if (apq == 0.0) continue;
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = a(p, p), arr = a(r, r);
        a(p, p) = app - t * apq;
        a(r, r) = arr + t * apq;
        a(p, r) = 0.0;
        a(r, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == r) continue;
          const double akp = a(k, p), akr = a(k, r);
          a(k, p) = a(p, k) = akp - s * (akr + tau * akp);
          a(k, r) = a(r, k) = akr + s * (akp - tau * akr);
        }
        if (q) {
          double* qc = q->data();
          for (int k = 0; k < n; ++k) {
            double& qkp = qc[(size_t)k * n + p];
            double& qkr = qc[(size_t)k * n + r];
            const double vp = qkp, vr = qkr;
            qkp = vp - s * (vr + tau * vp);
            qkr = vr + s * (vp - tau * vr);
          }
        }
      }
    }
  }
  const double off = off_diagonal_norm(a);
  if (off > opts.tolerance * scale)
    throw numeric_error("sym_eig: Jacobi did not converge, off-diagonal norm " + std::to_string(off));
}

// Householder reduction to tridiagonal form (diagonal d, subdiagonal e),
// accumulating the transformation in a when vectors are requested.
void tridiagonalize(Matrix& a, Vector& d, Vector& e, bool vectors) {
  const int n = a.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    double h = 0.0, sc = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) sc += std::abs(a(i, k));
      if (sc == 0.0) {
        e[i] = a(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          a(i, k) /= sc;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = sc * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          if (vectors) a(j, i) = a(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
          e[j] = g / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = a(i, j);
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
    d[i] = h;
  }
  if (vectors) d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    if (vectors) {
      const int l = i - 1;
      if (d[i] != 0.0) {
        for (int j = 0; j <= l; ++j) {
          double g = 0.0;
          for (int k = 0; k <= l; ++k) g += a(i, k) * a(k, j);
          for (int k = 0; k <= l; ++k) a(k, j) -= g * a(k, i);
        }
      }
      d[i] = a(i, i);
      a(i, i) = 1.0;
      for (int j = 0; j <= l; ++j) a(j, i) = a(i, j) = 0.0;
    } else {
      d[i] = a(i, i);
    }
  }
}

// Implicit-shift QL on a tridiagonal matrix; z accumulates eigenvectors when
// non-null (z must hold the tridiagonalizing transform on entry).
void tql(Vector& d, Vector& e, Matrix* z, int max_iter = 50) {
  const int n = (int)d.size();
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == max_iter) throw numeric_error("sym_eig: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (int k = 0; k < n; ++k) {
              f = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
              (*z)(k, i) = c * (*z)(k, i) - s * f;
            }
          }
        }
        if (r == 0.0 && m - 1 >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void sort_descending(Vector& vals, Matrix* vecs) {
  const int n = (int)vals.size();
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] > vals[b]; });
  Vector sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = vals[idx[i]];
  vals = std::move(sorted);
  if (!vecs) return;
  Matrix q(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) q(i, j) = (*vecs)(i, idx[j]);
  // stable sign convention: first component of visible magnitude positive
  for (int j = 0; j < n; ++j) {
    int lead = 0;
    while (lead < n - 1 && std::abs(q(lead, j)) <= 1e-12) ++lead;
    if (q(lead, j) < 0.0)
      for (int i = 0; i < n; ++i) q(i, j) = -q(i, j);
  }
  *vecs = std::move(q);
}

}  // namespace

KernelEigenSystem sym_eig(const Matrix& m, const SymEigOptions& opts) {
  KernelEigenSystem sys;
  sys.kernel = symmetrize(m);
  const int n = sys.kernel.rows();
  Matrix a = sys.kernel;
  Vector vals;
  Matrix q;
  if (n <= opts.jacobi_max_n) {
    if (opts.vectors) {
      q = Matrix(n, n);
      for (int i = 0; i < n; ++i) q(i, i) = 1.0;
    }
    jacobi(a, opts.vectors ? &q : nullptr, opts);
    vals.resize(n);
    for (int i = 0; i < n; ++i) vals[i] = a(i, i);
  } else {
    Vector d, e;
    tridiagonalize(a, d, e, opts.vectors);
    tql(d, e, opts.vectors ? &a : nullptr);
    vals = std::move(d);
    if (opts.vectors) q = std::move(a);
  }
  sort_descending(vals, opts.vectors ? &q : nullptr);
  sys.eigenvalues = std::move(vals);
  if (opts.vectors) sys.eigenvectors = std::move(q);
  return sys;
}

Vector sym_eigvalues(const Matrix& m, const SymEigOptions& opts) {
  SymEigOptions o = opts;
  o.vectors = false;
  return sym_eig(m, o).eigenvalues;
}

}  // namespace mspinn
