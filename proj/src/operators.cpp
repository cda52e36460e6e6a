#include "visco/operators.hpp"

namespace visco {
namespace {

const Complex I{0.0, 1.0};

}  // namespace

SpectralVectorField leray_project(const SpectralVectorField& v) {
  SpectralVectorField out = v;
  const Grid& g = v.grid;
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    const double q = xi.squaredNorm();
    if (q == 0.0) return;
    const Eigen::Vector3cd w = vector_at(v, m);
    const Complex dot = xi(0) * w(0) + xi(1) * w(1) + xi(2) * w(2);
    set_vector(out, m, w - (dot / q) * xi.cast<Complex>());
  });
  return out;
}

SpectralTensorField q_project(const SpectralTensorField& E) {
  SpectralTensorField out(E.grid);
  const Grid& g = E.grid;
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    const double q = xi.squaredNorm();
    if (q == 0.0) return;
    const Eigen::Vector3cd Ex = tensor_at(E, m) * xi.cast<Complex>();
    set_tensor(out, m, (Ex * xi.transpose().cast<Complex>()) / q);
  });
  return out;
}

SpectralTensorField grad(const SpectralVectorField& u) {
  SpectralTensorField out(u.grid);
  const Grid& g = u.grid;
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) out.c[tix(a, b)][m] = I * xi(b) * u.c[a][m];
  });
  return out;
}

SpectralVectorField grad(const SpectralScalarField& f) {
  SpectralVectorField out(f.grid);
  const Grid& g = f.grid;
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    for (int a = 0; a < 3; ++a) out.c[a][m] = I * xi(a) * f.c[0][m];
  });
  return out;
}

SpectralVectorField div(const SpectralTensorField& E) {
  SpectralVectorField out(E.grid);
  const Grid& g = E.grid;
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    for (int a = 0; a < 3; ++a) {
      Complex s{};
      for (int b = 0; b < 3; ++b) s += xi(b) * E.c[tix(a, b)][m];
      out.c[a][m] = I * s;
    }
  });
  return out;
}

SpectralVectorField div_transpose(const SpectralTensorField& E) {
  SpectralVectorField out(E.grid);
  const Grid& g = E.grid;
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    for (int a = 0; a < 3; ++a) {
      Complex s{};
      for (int b = 0; b < 3; ++b) s += xi(b) * E.c[tix(b, a)][m];
      out.c[a][m] = I * s;
    }
  });
  return out;
}

SpectralScalarField div(const SpectralVectorField& u) {
  SpectralScalarField out(u.grid);
  const Grid& g = u.grid;
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    out.c[0][m] = I * (xi(0) * u.c[0][m] + xi(1) * u.c[1][m] + xi(2) * u.c[2][m]);
  });
  return out;
}

SpectralVectorField curl(const SpectralVectorField& u) {
  SpectralVectorField out(u.grid);
  const Grid& g = u.grid;
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    out.c[0][m] = I * (xi(1) * u.c[2][m] - xi(2) * u.c[1][m]);
    out.c[1][m] = I * (xi(2) * u.c[0][m] - xi(0) * u.c[2][m]);
    out.c[2][m] = I * (xi(0) * u.c[1][m] - xi(1) * u.c[0][m]);
  });
  return out;
}

SpectralTensorField transpose(const SpectralTensorField& E) {
  SpectralTensorField out(E.grid);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out.c[tix(a, b)] = E.c[tix(b, a)];
  return out;
}

}  // namespace visco
