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

#ifndef DRLR_ADMITTANCE_CONTROLLER_H_
#define DRLR_ADMITTANCE_CONTROLLER_H_

#include <string>
#include <vector>

#include <Eigen/Core>

namespace drlr::admittance {

// Virtual mass-spring-damper turning a torque discrepancy into a position
// reference offset: tau_d - tau_e = M_d qdd_f + K_D qd_f + K_P q_f.
struct AdmittanceGains {
  double inertia = 1.0;     // M_d
  double damping = 2.0;     // K_D
  double stiffness = 1.0;   // K_P
  double tau_sat = 1.0;     // saturation torque
};

// Throws std::invalid_argument unless every gain is strictly positive.
void Validate(const AdmittanceGains& gains);

// Filter offsets per joint; zero at episode start.
struct AdmittanceState {
  Eigen::Vector2d q_f = Eigen::Vector2d::Zero();
  Eigen::Vector2d qd_f = Eigen::Vector2d::Zero();
};

struct AdmittanceOutput {
  AdmittanceState state;
  Eigen::Vector2d q_f = Eigen::Vector2d::Zero();
  Eigen::Vector2d qdd_f = Eigen::Vector2d::Zero();
  // Per joint: the saturation branch (tau_e > tau_sat) was taken.
  Eigen::Array2i saturated = Eigen::Array2i::Zero();
};

// Per joint:
//   tau_e > tau_sat: qdd_f = -((tau_sat - tau_e) - K_D qd_f - K_P q_f) / M_d
//   otherwise:       qdd_f =  ((tau_d   - tau_e) - K_D qd_f - K_P q_f) / M_d
// integrated with semi-implicit Euler. The saturation branch carries the
// opposite sign on the damping and stiffness terms, so it is not a stable
// filter on its own; it only runs while contact keeps tau_e above tau_sat.
AdmittanceOutput AdmittanceTwoSided(const AdmittanceState& state,
                                    const AdmittanceGains& gains,
                                    const Eigen::Vector2d& tau_d,
                                    const Eigen::Vector2d& tau_e, double dt);

// Same saturation branch; otherwise qdd_f = 0. With
// `zero_velocity_when_inactive` the inactive branch also clears qd_f.
AdmittanceOutput AdmittanceOneSided(const AdmittanceState& state,
                                    const AdmittanceGains& gains,
                                    const Eigen::Vector2d& tau_e, double dt,
                                    bool zero_velocity_when_inactive = false);

// Jump in qdd_f (normal minus saturated branch) at tau_e = tau_sat:
// (tau_d - tau_sat - 2 K_D qd_f - 2 K_P q_f) / M_d.
Eigen::Vector2d TwoSidedBranchGap(const AdmittanceState& state,
                                  const AdmittanceGains& gains,
                                  const Eigen::Vector2d& tau_d);

// Rows of the trajectory dump `t,q1,q2,qd1,qd2,tau_e,q_f1,q_f2,phase`, where
// qd1/qd2 are the commanded joint references.
struct TrajectoryRow {
  double t = 0.0;
  Eigen::Vector2d q = Eigen::Vector2d::Zero();
  Eigen::Vector2d q_ref = Eigen::Vector2d::Zero();
  double tau_e = 0.0;
  Eigen::Vector2d q_f = Eigen::Vector2d::Zero();
  int phase = 1;
};

void WriteTrajectoryCsv(const std::string& path,
                        const std::vector<TrajectoryRow>& rows);

}  // namespace drlr::admittance

#endif  // DRLR_ADMITTANCE_CONTROLLER_H_
