#include "ravopt/rng.hpp"

namespace ravopt {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t a = splitmix64(state);
  state ^= stream * 0xd1b54a32d192ed03ULL;
  std::uint64_t b = splitmix64(state);
  return a ^ (b << 1);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = mix_seed(seed, stream);
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state))};
  return Rng(seq);
}

Vector standard_normal(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

Matrix standard_normal(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  // fill row by row so the draw order matches the row-major flattening
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

Vector random_direction(Rng& rng, Eigen::Index n) {
  for (;;) {
    Vector v = standard_normal(rng, n);
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

Matrix random_orthonormal_rows(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix g = standard_normal(rng, cols, rows);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(cols, rows);
  // sign fix makes the distribution Haar
  Matrix r = qr.matrixQR().topRows(rows).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < rows; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q.transpose();
}

}  // namespace ravopt
