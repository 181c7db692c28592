#pragma once

// Small models shared by the unit suites.

#include "ppdiv/fixtures_kr.hpp"

namespace testing_models {

using namespace ppdiv;

/// A^2 with the two coordinate axes and one more line.
inline ModelRef affine() {
  return kr::make_model("plane", ModelKind::AffinePlane,
                        {kr::prime("X", 0), kr::prime("Y", 0), kr::prime("L", 0)},
                        {{"x", QDivisor{{"X", 1}}}, {"y", QDivisor{{"Y", 1}}}, {"l", QDivisor{{"L", 1}}}});
}

/// Blow-up of A^2 at the origin with one line D through it.
inline ModelRef plane_blowup() {
  return kr::make_model("plane_blowup", ModelKind::BlowupA2, {kr::prime("D", 1), kr::exceptional("E")},
                        {{"u", QDivisor{{"D", 1}, {"E", 1}}}});
}

}  // namespace testing_models
