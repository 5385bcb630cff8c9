#pragma once

#include "tracegeo/core.hpp"

#include <array>
#include <cmath>

namespace tracegeo {

namespace detail {

// Diagonal Pade approximants r_m = (V - U)^{-1} (V + U) of exp, m in {3,5,7,9,13}.
template <typename Scalar>
void pade_terms(const Mat<Scalar>& a, int m, Mat<Scalar>& u, Mat<Scalar>& v) {
  const Eigen::Index n = a.rows();
  const Mat<Scalar> id = Mat<Scalar>::Identity(n, n);
  const Mat<Scalar> a2 = a * a;
  switch (m) {
    case 3: {
      constexpr std::array<double, 4> b{120.0, 60.0, 12.0, 1.0};
      u = a * (Scalar(b[3]) * a2 + Scalar(b[1]) * id);
      v = Scalar(b[2]) * a2 + Scalar(b[0]) * id;
      return;
    }
    case 5: {
      constexpr std::array<double, 6> b{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
      const Mat<Scalar> a4 = a2 * a2;
      u = a * (Scalar(b[5]) * a4 + Scalar(b[3]) * a2 + Scalar(b[1]) * id);
      v = Scalar(b[4]) * a4 + Scalar(b[2]) * a2 + Scalar(b[0]) * id;
      return;
    }
    case 7: {
      constexpr std::array<double, 8> b{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                        25200.0,    1512.0,    56.0,      1.0};
      const Mat<Scalar> a4 = a2 * a2;
      const Mat<Scalar> a6 = a4 * a2;
      u = a * (Scalar(b[7]) * a6 + Scalar(b[5]) * a4 + Scalar(b[3]) * a2 + Scalar(b[1]) * id);
      v = Scalar(b[6]) * a6 + Scalar(b[4]) * a4 + Scalar(b[2]) * a2 + Scalar(b[0]) * id;
      return;
    }
    case 9: {
      constexpr std::array<double, 10> b{17643225600.0, 8821612800.0, 2075673600.0,
                                         302702400.0,   30270240.0,   2162160.0,
                                         110880.0,      3960.0,       90.0,
                                         1.0};
      const Mat<Scalar> a4 = a2 * a2;
      const Mat<Scalar> a6 = a4 * a2;
      const Mat<Scalar> a8 = a6 * a2;
      u = a * (Scalar(b[9]) * a8 + Scalar(b[7]) * a6 + Scalar(b[5]) * a4 + Scalar(b[3]) * a2 +
               Scalar(b[1]) * id);
      v = Scalar(b[8]) * a8 + Scalar(b[6]) * a6 + Scalar(b[4]) * a4 + Scalar(b[2]) * a2 +
          Scalar(b[0]) * id;
      return;
    }
    default: {
      constexpr std::array<double, 14> b{
          64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
          1187353796428800.0,  129060195264000.0,   10559470521600.0,
          670442572800.0,      33522128640.0,       1323241920.0,
          40840800.0,          960960.0,            16380.0,
          182.0,               1.0};
      const Mat<Scalar> a4 = a2 * a2;
      const Mat<Scalar> a6 = a4 * a2;
      const Mat<Scalar> inner_u =
          a6 * (Scalar(b[13]) * a6 + Scalar(b[11]) * a4 + Scalar(b[9]) * a2);
      u = a * (inner_u + Scalar(b[7]) * a6 + Scalar(b[5]) * a4 + Scalar(b[3]) * a2 +
               Scalar(b[1]) * id);
      const Mat<Scalar> inner_v =
          a6 * (Scalar(b[12]) * a6 + Scalar(b[10]) * a4 + Scalar(b[8]) * a2);
      v = inner_v + Scalar(b[6]) * a6 + Scalar(b[4]) * a4 + Scalar(b[2]) * a2 +
          Scalar(b[0]) * id;
      return;
    }
  }
}

template <typename Scalar>
Scalar one_norm(const Mat<Scalar>& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace detail

/// Matrix exponential by scaling and squaring with a diagonal Pade
/// approximant. The degree is picked from fixed 1-norm thresholds, so the
/// result is a deterministic function of the input.
template <typename Derived>
Mat<typename Derived::Scalar> expm(const Eigen::MatrixBase<Derived>& a_in) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a_in, "expm");
  Mat<Scalar> a = a_in.eval();
  const Eigen::Index n = a.rows();

  constexpr std::array<int, 4> low_degrees{3, 5, 7, 9};
  constexpr std::array<double, 4> low_theta{1.495585217958292e-2, 2.539398330063230e-1,
                                            9.504178996162932e-1, 2.097847961257068e0};
  constexpr double theta13 = 5.371920351148152e0;

  const Scalar norm = detail::one_norm(a);
  Mat<Scalar> u(n, n);
  Mat<Scalar> v(n, n);
  for (std::size_t k = 0; k < low_degrees.size(); ++k) {
    if (norm <= Scalar(low_theta[k])) {
      detail::pade_terms(a, low_degrees[k], u, v);
      return (v - u).partialPivLu().solve(v + u);
    }
  }

  int squarings = 0;
  if (norm > Scalar(theta13)) {
    squarings = static_cast<int>(std::ceil(std::log2(static_cast<double>(norm) / theta13)));
    a /= std::ldexp(Scalar(1), squarings);
  }
  detail::pade_terms(a, 13, u, v);
  Mat<Scalar> r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = (r * r).eval();
  return r;
}

}  // namespace tracegeo
