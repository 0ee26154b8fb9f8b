#include "sdd/operators.hpp"

#include <cmath>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

namespace sdd::ops {

namespace {

constexpr Complex kI{0.0, 1.0};

int checked_total_dim(const std::vector<int>& dims) {
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionMismatch("site dimension must be >= 1");
    total *= d;
    if (total > (1 << 20)) throw DimensionTooLarge("register dimension too large");
  }
  return static_cast<int>(total);
}

}  // namespace

ComplexMatrix pauli(Pauli axis) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  switch (axis) {
    case Pauli::I:
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case Pauli::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Pauli::Y:
      m(0, 1) = kI;
      m(1, 0) = -kI;
      break;
    case Pauli::Z:
      m(0, 0) = -1.0;
      m(1, 1) = 1.0;
      break;
  }
  return m;
}

ComplexMatrix site_operator(const PauliCoefficients& c) {
  if (!std::isfinite(c.c0) || !std::isfinite(c.cx) || !std::isfinite(c.cy) ||
      !std::isfinite(c.cz)) {
    throw Error("site_operator: coefficients must be finite");
  }
  return c.c0 * pauli(Pauli::I) + c.cx * pauli(Pauli::X) + c.cy * pauli(Pauli::Y) +
         c.cz * pauli(Pauli::Z);
}

QubitRegister QubitRegister::qubits(int n) {
  if (n < 1) throw DimensionMismatch("QubitRegister: need at least one site");
  QubitRegister reg;
  reg.n_sites = n;
  reg.dims.assign(static_cast<std::size_t>(n), 2);
  return reg;
}

int QubitRegister::total_dim() const { return checked_total_dim(dims); }

ComplexMatrix tensor(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) throw EmptyList("tensor: empty factor list");
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    out = Eigen::kroneckerProduct(out, factors[k]).eval();
  }
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, int site, const std::vector<int>& dims) {
  if (site < 0 || site >= static_cast<int>(dims.size())) {
    throw DimensionMismatch("embed: site index out of range");
  }
  if (op.rows() != dims[static_cast<std::size_t>(site)]) {
    throw DimensionMismatch("embed: operator dimension does not match site");
  }
  std::vector<ComplexMatrix> factors;
  factors.reserve(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (static_cast<int>(k) == site) {
      factors.push_back(op);
    } else {
      factors.push_back(ComplexMatrix::Identity(dims[k], dims[k]));
    }
  }
  return tensor(factors);
}

ComplexMatrix spin_bath_hamiltonian(int bath_size, const std::vector<double>& omegas,
                                    const std::vector<double>& couplings) {
  const int n_sites = bath_size + 1;
  if (static_cast<int>(omegas.size()) != n_sites) {
    throw DimensionMismatch("spin_bath_hamiltonian: need K+1 split frequencies");
  }
  if (static_cast<int>(couplings.size()) != bath_size) {
    throw DimensionMismatch("spin_bath_hamiltonian: need K coupling constants");
  }
  if (n_sites > 6) {
    throw DimensionTooLarge("spin_bath_hamiltonian: total dimension above 64");
  }
  const std::vector<int> dims(static_cast<std::size_t>(n_sites), 2);
  const int total = checked_total_dim(dims);
  ComplexMatrix h = ComplexMatrix::Zero(total, total);
  const ComplexMatrix sx = pauli(Pauli::X);
  const ComplexMatrix sy = pauli(Pauli::Y);
  const ComplexMatrix sz = pauli(Pauli::Z);
  for (int k = 1; k <= bath_size; ++k) {
    const double a_k = couplings[static_cast<std::size_t>(k - 1)];
    h += a_k * (embed(sx, 0, dims) * embed(sx, k, dims) +
                embed(sy, 0, dims) * embed(sy, k, dims) +
                embed(sz, 0, dims) * embed(sz, k, dims));
  }
  for (int k = 0; k < n_sites; ++k) {
    h += 0.5 * omegas[static_cast<std::size_t>(k)] * embed(sz, k, dims);
  }
  return h;
}

LadderPair boson_ladder(const BosonicSpace& space) {
  const int d = space.truncation_dim;
  if (d < 2) throw DimensionMismatch("boson_ladder: truncation dimension must be >= 2");
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {a, a.adjoint()};
}

ComplexMatrix parity_phase_pulse(const BosonicSpace& space, double phi) {
  if (!(phi > 0.0) || phi > M_PI) {
    throw PhiOutOfRange("parity_phase_pulse: phi must lie in (0, pi]");
  }
  const int d = space.truncation_dim;
  if (d < 2) throw DimensionMismatch("parity_phase_pulse: truncation dimension must be >= 2");
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) u(n, n) = std::exp(kI * (phi * n));
  return u;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  const int total = checked_total_dim(dims);
  if (rho.rows() != total || rho.cols() != total) {
    throw DimensionMismatch("partial_trace: site dimensions do not multiply to dim(rho)");
  }
  const int n_sites = static_cast<int>(dims.size());
  std::vector<bool> kept(static_cast<std::size_t>(n_sites), false);
  for (int s : keep) {
    if (s < 0 || s >= n_sites) throw DimensionMismatch("partial_trace: keep index out of range");
    kept[static_cast<std::size_t>(s)] = true;
  }

  int keep_dim = 1, trace_dim = 1;
  for (int s = 0; s < n_sites; ++s) {
    (kept[static_cast<std::size_t>(s)] ? keep_dim : trace_dim) *= dims[static_cast<std::size_t>(s)];
  }

  // Row-major strides per site.
  std::vector<int> stride(static_cast<std::size_t>(n_sites), 1);
  for (int s = n_sites - 2; s >= 0; --s) {
    stride[static_cast<std::size_t>(s)] =
        stride[static_cast<std::size_t>(s + 1)] * dims[static_cast<std::size_t>(s + 1)];
  }

  // Map a (kept-index, traced-index) pair to a full-register index.
  auto full_index = [&](int keep_idx, int trace_idx) {
    int idx = 0;
    for (int s = n_sites - 1; s >= 0; --s) {
      const int d = dims[static_cast<std::size_t>(s)];
      int digit;
      if (kept[static_cast<std::size_t>(s)]) {
        digit = keep_idx % d;
        keep_idx /= d;
      } else {
        digit = trace_idx % d;
        trace_idx /= d;
      }
      idx += digit * stride[static_cast<std::size_t>(s)];
    }
    return idx;
  };

  ComplexMatrix out = ComplexMatrix::Zero(keep_dim, keep_dim);
  for (int i = 0; i < keep_dim; ++i) {
    for (int j = 0; j < keep_dim; ++j) {
      Complex acc = 0.0;
      for (int m = 0; m < trace_dim; ++m) {
        acc += rho(full_index(i, m), full_index(j, m));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

double top_level_population(const ComplexMatrix& rho, const std::vector<int>& dims, int site,
                            int levels) {
  const ComplexMatrix reduced = partial_trace(rho, dims, {site});
  const int d = static_cast<int>(reduced.rows());
  double top = 0.0;
  for (int n = std::max(0, d - levels); n < d; ++n) {
    top = std::max(top, reduced(n, n).real());
  }
  return top;
}

}  // namespace sdd::ops
