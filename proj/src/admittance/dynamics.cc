// Copyright 2026 The DRLR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drlr/admittance/dynamics.h"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

namespace drlr::admittance {
namespace {

double Sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

Eigen::Matrix2d JointDynamics::Inertia(const Eigen::Vector2d& q) const {
  const double c2 = std::cos(q(1));
  const double m22 = m2 * l2 * l2;
  const double m12 = m22 + m2 * l1 * l2 * c2;
  const double m11 = (m1 + m2) * l1 * l1 + m22 + 2.0 * m2 * l1 * l2 * c2;
  Eigen::Matrix2d m;
  m << m11, m12, m12, m22;
  return m;
}

Eigen::Vector2d JointDynamics::CoriolisTerm(const Eigen::Vector2d& q,
                                            const Eigen::Vector2d& qd) const {
  const double h = m2 * l1 * l2 * std::sin(q(1));
  return {-h * (2.0 * qd(0) * qd(1) + qd(1) * qd(1)), h * qd(0) * qd(0)};
}

Eigen::Vector2d JointDynamics::Friction(const Eigen::Vector2d& qd) const {
  return {viscous(0) * qd(0) + coulomb(0) * Sign(qd(0)),
          viscous(1) * qd(1) + coulomb(1) * Sign(qd(1))};
}

Eigen::Vector2d JointDynamics::Gravity(const Eigen::Vector2d& q) const {
  const double c1 = std::cos(q(0));
  const double c12 = std::cos(q(0) + q(1));
  return {(m1 + m2) * gravity * l1 * c1 + m2 * gravity * l2 * c12,
          m2 * gravity * l2 * c12};
}

Eigen::Vector2d JointDynamics::Nonlinear(const Eigen::Vector2d& q,
                                         const Eigen::Vector2d& qd) const {
  return CoriolisTerm(q, qd) + Friction(qd) + Gravity(q);
}

double JointDynamics::KineticEnergy(const Eigen::Vector2d& q,
                                    const Eigen::Vector2d& qd) const {
  return 0.5 * qd.dot(Inertia(q) * qd);
}

double JointDynamics::PotentialEnergy(const Eigen::Vector2d& q) const {
  const double y1 = l1 * std::sin(q(0));
  const double y2 = y1 + l2 * std::sin(q(0) + q(1));
  return gravity * (m1 * y1 + m2 * y2);
}

Eigen::Vector2d JointDynamics::TipPosition(const Eigen::Vector2d& q) const {
  return {l1 * std::cos(q(0)) + l2 * std::cos(q(0) + q(1)),
          l1 * std::sin(q(0)) + l2 * std::sin(q(0) + q(1))};
}

Eigen::Matrix2d JointDynamics::TipJacobian(const Eigen::Vector2d& q) const {
  const double s1 = std::sin(q(0));
  const double c1 = std::cos(q(0));
  const double s12 = std::sin(q(0) + q(1));
  const double c12 = std::cos(q(0) + q(1));
  Eigen::Matrix2d j;
  j << -l1 * s1 - l2 * s12, -l2 * s12, l1 * c1 + l2 * c12, l2 * c12;
  return j;
}

JointState DynamicsStep(const JointDynamics& dyn, const JointState& state,
                        const Eigen::Vector2d& tau,
                        const Eigen::Vector2d& tau_e, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("DynamicsStep: dt must be > 0");
  const Eigen::Matrix2d m = dyn.Inertia(state.q);
  if (!(std::abs(m.determinant()) > 1e-12)) {
    throw std::runtime_error("DynamicsStep: singular inertia matrix");
  }
  const Eigen::Matrix2d m_inv = m.inverse();
  // Symplectic Euler on p = M(q) qd: p' = p + dt (F + dT/dq(q, M^-1 p')),
  // q' = q + dt M(q)^-1 p'. The implicit term is resolved by fixed point.
  const Eigen::Vector2d p = m * state.qd;
  const Eigen::Vector2d force =
      tau + tau_e - dyn.Friction(state.qd) - dyn.Gravity(state.q);
  const double h = dyn.m2 * dyn.l1 * dyn.l2 * std::sin(state.q(1));
  Eigen::Vector2d p_next = p;
  Eigen::Vector2d qd = state.qd;
  for (int it = 0; it < 4; ++it) {
    const Eigen::Vector2d dt_dq(0.0, -h * (qd(0) * qd(0) + qd(0) * qd(1)));
    p_next = p + dt * (force + dt_dq);
    qd = m_inv * p_next;
  }
  JointState next;
  next.q = state.q + dt * qd;
  next.qd = dyn.Inertia(next.q).inverse() * p_next;
  return next;
}

Eigen::Vector2d TrackingController(const JointDynamics& dyn,
                                   const JointState& state,
                                   const Eigen::Vector2d& q_ref,
                                   const Eigen::Vector2d& qd_ref,
                                   const TrackingGains& gains) {
  const Eigen::Vector2d qdd_cmd =
      gains.kp * (q_ref - state.q) + gains.kv * (qd_ref - state.qd);
  return dyn.Inertia(state.q) * qdd_cmd + dyn.Nonlinear(state.q, state.qd);
}

}  // namespace drlr::admittance
