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

#include "drlr/admittance/controller.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace drlr::admittance {

void Validate(const AdmittanceGains& g) {
  if (!(g.inertia > 0.0 && g.damping > 0.0 && g.stiffness > 0.0 &&
        g.tau_sat > 0.0)) {
    throw std::invalid_argument("admittance gains must be strictly positive");
  }
}

namespace {

double SaturatedAccel(const AdmittanceGains& g, double q_f, double qd_f,
                      double tau_e) {
  return -((g.tau_sat - tau_e) - g.damping * qd_f - g.stiffness * q_f) /
         g.inertia;
}

void Integrate(const AdmittanceState& in, const Eigen::Vector2d& qdd,
               double dt, AdmittanceOutput* out) {
  out->qdd_f = qdd;
  out->state.qd_f = in.qd_f + dt * qdd;
  out->state.q_f = in.q_f + dt * out->state.qd_f;
  out->q_f = out->state.q_f;
}

}  // namespace

AdmittanceOutput AdmittanceTwoSided(const AdmittanceState& state,
                                    const AdmittanceGains& gains,
                                    const Eigen::Vector2d& tau_d,
                                    const Eigen::Vector2d& tau_e, double dt) {
  AdmittanceOutput out;
  Eigen::Vector2d qdd;
  for (int i = 0; i < 2; ++i) {
    if (tau_e(i) > gains.tau_sat) {
      out.saturated(i) = 1;
      qdd(i) = SaturatedAccel(gains, state.q_f(i), state.qd_f(i), tau_e(i));
    } else {
      qdd(i) = ((tau_d(i) - tau_e(i)) - gains.damping * state.qd_f(i) -
                gains.stiffness * state.q_f(i)) /
               gains.inertia;
    }
  }
  Integrate(state, qdd, dt, &out);
  return out;
}

AdmittanceOutput AdmittanceOneSided(const AdmittanceState& state,
                                    const AdmittanceGains& gains,
                                    const Eigen::Vector2d& tau_e, double dt,
                                    bool zero_velocity_when_inactive) {
  AdmittanceOutput out;
  Eigen::Vector2d qdd = Eigen::Vector2d::Zero();
  AdmittanceState in = state;
  for (int i = 0; i < 2; ++i) {
    if (tau_e(i) > gains.tau_sat) {
      out.saturated(i) = 1;
      qdd(i) = SaturatedAccel(gains, state.q_f(i), state.qd_f(i), tau_e(i));
    } else if (zero_velocity_when_inactive) {
      in.qd_f(i) = 0.0;
    }
  }
  Integrate(in, qdd, dt, &out);
  return out;
}

Eigen::Vector2d TwoSidedBranchGap(const AdmittanceState& state,
                                  const AdmittanceGains& gains,
                                  const Eigen::Vector2d& tau_d) {
  Eigen::Vector2d gap;
  for (int i = 0; i < 2; ++i) {
    const double sat = SaturatedAccel(gains, state.q_f(i), state.qd_f(i),
                                      gains.tau_sat);
    const double normal = ((tau_d(i) - gains.tau_sat) -
                           gains.damping * state.qd_f(i) -
                           gains.stiffness * state.q_f(i)) /
                          gains.inertia;
    gap(i) = normal - sat;
  }
  return gap;
}

void WriteTrajectoryCsv(const std::string& path,
                        const std::vector<TrajectoryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "t,q1,q2,qd1,qd2,tau_e,q_f1,q_f2,phase\n";
  char buf[512];
  for (const TrajectoryRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%d\n",
                  r.t, r.q(0), r.q(1), r.q_ref(0), r.q_ref(1), r.tau_e,
                  r.q_f(0), r.q_f(1), r.phase);
    out << buf;
  }
}

}  // namespace drlr::admittance
