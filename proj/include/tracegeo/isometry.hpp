#pragma once

#include "tracegeo/core.hpp"

#include <string_view>
#include <utility>
#include <variant>

namespace tracegeo {

// Isometries of (GL_n, g). Parameter matrices must be invertible.
namespace iso {

template <typename Scalar>
struct LeftTranslate {
  Mat<Scalar> g;
};
template <typename Scalar>
struct RightTranslate {
  Mat<Scalar> g;
};
/// X -> G^{-1} X G
template <typename Scalar>
struct Conjugate {
  Mat<Scalar> g;
};
/// X -> G^T X G
template <typename Scalar>
struct Congruence {
  Mat<Scalar> g;
};
struct Inversion {};
struct Transposition {};
struct Negation {};
/// X -> A X^{-1} A, the geodesic symmetry about A.
template <typename Scalar>
struct PointSymmetry {
  Mat<Scalar> a;
};

}  // namespace iso

template <typename Scalar>
using IsometryMap =
    std::variant<iso::LeftTranslate<Scalar>, iso::RightTranslate<Scalar>, iso::Conjugate<Scalar>,
                 iso::Congruence<Scalar>, iso::Inversion, iso::Transposition, iso::Negation,
                 iso::PointSymmetry<Scalar>>;

template <typename Scalar>
std::string_view isometry_name(const IsometryMap<Scalar>& f) {
  constexpr std::string_view names[] = {"left-translate", "right-translate", "conjugate",
                                        "congruence",     "inversion",       "transposition",
                                        "negation",       "point-symmetry"};
  return names[f.index()];
}

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <typename Scalar>
void require_invertible_parameter(const IsometryMap<Scalar>& f) {
  std::visit(overloaded{[](const iso::Inversion&) {}, [](const iso::Transposition&) {},
                        [](const iso::Negation&) {},
                        [](const iso::PointSymmetry<Scalar>& p) {
                          (void)checked_inverse(p.a, "isometry parameter");
                        },
                        [](const auto& p) { (void)checked_inverse(p.g, "isometry parameter"); }},
             f);
}

}  // namespace detail

template <typename Scalar, typename Derived>
Mat<Scalar> apply_isometry(const IsometryMap<Scalar>& f, const Eigen::MatrixBase<Derived>& x_in) {
  using detail::overloaded;
  detail::require_square(x_in, "apply_isometry");
  detail::require_invertible_parameter(f);
  const Mat<Scalar> x = x_in.eval();
  const Mat<Scalar> x_inv = checked_inverse(x, "apply_isometry");
  return std::visit(
      overloaded{
          [&](const iso::LeftTranslate<Scalar>& p) -> Mat<Scalar> { return p.g * x; },
          [&](const iso::RightTranslate<Scalar>& p) -> Mat<Scalar> { return x * p.g; },
          [&](const iso::Conjugate<Scalar>& p) -> Mat<Scalar> {
            return checked_inverse(p.g) * x * p.g;
          },
          [&](const iso::Congruence<Scalar>& p) -> Mat<Scalar> {
            return p.g.transpose() * x * p.g;
          },
          [&](const iso::Inversion&) -> Mat<Scalar> { return x_inv; },
          [&](const iso::Transposition&) -> Mat<Scalar> { return x.transpose(); },
          [&](const iso::Negation&) -> Mat<Scalar> { return -x; },
          [&](const iso::PointSymmetry<Scalar>& p) -> Mat<Scalar> { return p.a * x_inv * p.a; },
      },
      f);
}

/// Differential of f at A applied to V. Linear isometries act on tangent
/// vectors as themselves; the inversion has (D phi)_A(V) = -A^{-1} V A^{-1};
/// the point symmetry is differentiated as the chain R_A0 o L_A0 o phi.
template <typename Scalar, typename DA, typename DV>
Mat<Scalar> pushforward(const IsometryMap<Scalar>& f, const Eigen::MatrixBase<DA>& a_in,
                        const Eigen::MatrixBase<DV>& v_in) {
  using detail::overloaded;
  detail::require_square(a_in, "pushforward");
  detail::require_same_order(a_in, v_in, "pushforward");
  detail::require_invertible_parameter(f);
  const Mat<Scalar> a = a_in.eval();
  const Mat<Scalar> v = v_in.eval();
  const Mat<Scalar> a_inv = checked_inverse(a, "pushforward");
  return std::visit(
      overloaded{
          [&](const iso::Inversion&) -> Mat<Scalar> { return -a_inv * v * a_inv; },
          [&](const iso::PointSymmetry<Scalar>& p) -> Mat<Scalar> {
            const IsometryMap<Scalar> inversion = iso::Inversion{};
            const IsometryMap<Scalar> left = iso::LeftTranslate<Scalar>{p.a};
            const IsometryMap<Scalar> right = iso::RightTranslate<Scalar>{p.a};
            const Mat<Scalar> a1 = apply_isometry(inversion, a);
            const Mat<Scalar> v1 = pushforward(inversion, a, v);
            const Mat<Scalar> a2 = apply_isometry(left, a1);
            const Mat<Scalar> v2 = pushforward(left, a1, v1);
            return pushforward(right, a2, v2);
          },
          [&](const iso::Transposition&) -> Mat<Scalar> { return v.transpose(); },
          [&](const iso::Negation&) -> Mat<Scalar> { return -v; },
          [&](const iso::LeftTranslate<Scalar>& p) -> Mat<Scalar> { return p.g * v; },
          [&](const iso::RightTranslate<Scalar>& p) -> Mat<Scalar> { return v * p.g; },
          [&](const iso::Conjugate<Scalar>& p) -> Mat<Scalar> {
            return checked_inverse(p.g) * v * p.g;
          },
          [&](const iso::Congruence<Scalar>& p) -> Mat<Scalar> {
            return p.g.transpose() * v * p.g;
          },
      },
      f);
}

}  // namespace tracegeo
