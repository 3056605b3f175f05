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

#ifndef DRLR_ADMITTANCE_DYNAMICS_H_
#define DRLR_ADMITTANCE_DYNAMICS_H_

#include <Eigen/Core>

namespace drlr::admittance {

// Planar two-link arm (boom, bucket) with point masses at the link tips.
// Joint angles are absolute for the boom and relative for the bucket, measured
// from the horizontal, counter-clockwise positive.
//
//   M(q) qdd + n(q, qd) = tau + tau_e
//   n(q, qd) = C(q, qd) qd + tau_f(qd) + g(q)
//
// Friction per joint is viscous * qd + coulomb * sign(qd), with sign(0) = 0.
struct JointDynamics {
  double l1 = 1.0;
  double l2 = 0.5;
  double m1 = 1.0;
  double m2 = 0.5;
  double gravity = 9.81;
  Eigen::Vector2d viscous{0.5, 0.5};
  Eigen::Vector2d coulomb{0.1, 0.1};

  Eigen::Matrix2d Inertia(const Eigen::Vector2d& q) const;
  Eigen::Vector2d CoriolisTerm(const Eigen::Vector2d& q,
                               const Eigen::Vector2d& qd) const;
  Eigen::Vector2d Friction(const Eigen::Vector2d& qd) const;
  Eigen::Vector2d Gravity(const Eigen::Vector2d& q) const;
  Eigen::Vector2d Nonlinear(const Eigen::Vector2d& q,
                            const Eigen::Vector2d& qd) const;

  double KineticEnergy(const Eigen::Vector2d& q,
                       const Eigen::Vector2d& qd) const;
  double PotentialEnergy(const Eigen::Vector2d& q) const;

  // Bucket tip relative to the boom pivot.
  Eigen::Vector2d TipPosition(const Eigen::Vector2d& q) const;
  // d tip / d q.
  Eigen::Matrix2d TipJacobian(const Eigen::Vector2d& q) const;
};

struct JointState {
  Eigen::Vector2d q = Eigen::Vector2d::Zero();
  Eigen::Vector2d qd = Eigen::Vector2d::Zero();
};

// Semi-implicit Euler: qdd = M^-1 (tau + tau_e - n), qd += dt qdd,
// q += dt qd. Throws std::invalid_argument for dt <= 0 and
// std::runtime_error if M(q) is singular.
JointState DynamicsStep(const JointDynamics& dyn, const JointState& state,
                        const Eigen::Vector2d& tau,
                        const Eigen::Vector2d& tau_e, double dt);

struct TrackingGains {
  double kp = 400.0;
  double kv = 40.0;
};

// Computed-torque law tau = M(q) (kp (q_ref - q) + kv (qd_ref - qd)) + n(q, qd).
Eigen::Vector2d TrackingController(const JointDynamics& dyn,
                                   const JointState& state,
                                   const Eigen::Vector2d& q_ref,
                                   const Eigen::Vector2d& qd_ref,
                                   const TrackingGains& gains);

}  // namespace drlr::admittance

#endif  // DRLR_ADMITTANCE_DYNAMICS_H_
