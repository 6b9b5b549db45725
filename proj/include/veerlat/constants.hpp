#pragma once

#include "veerlat/errors.hpp"

namespace veerlat {

// Universal distance constants used by the quantitative checks.  All are
// dimensionless integers; the self-check pins the derived ones to their
// defining expressions so a stray edit cannot silently shift a threshold.
struct DistanceConstants {
  int D = 15;                 // diameter bound for arc sets of small proper graphs
  int annularProjDiam = 3;    // diameter of an annular projection of one section
  int projClose = 7;          // distance between the two boundary-projection flavors
  int topBottomSlack = 16;    // D + 1: sections beyond the band vs eigen classes
  int staysClose = 60;        // 4D: retraction moves a projection at most this far
  int rightPlace = 41;        // 2D + 11: translated band section vs contracting class
  int pocketCut = 240;        // 16D: subtracted term in the main inequality
  int progressStep = 30;      // 2D: projection change from few diagonal exchanges
  int dichotomyFactor = 135;  // 9D: factor in the dichotomy bound
  int immersionM = 38;        // documented immersion-diameter constant (not computed)

  void selfCheck() const {
    bool ok = D == 15 && annularProjDiam == 3 && projClose == 7 &&
              topBottomSlack == D + 1 && staysClose == 4 * D && rightPlace == 2 * D + 11 &&
              pocketCut == 16 * D && progressStep == 2 * D && dichotomyFactor == 9 * D &&
              immersionM == 38;
    if (!ok) fail(ErrorCode::Internal, "distance-constant self-check failed");
  }

  // The standing hypothesis for isolated pockets: d_Y between the two eigen
  // classes must be at least 10*D.
  int isolationGate() const { return 10 * D; }
};

inline const DistanceConstants& constants() {
  static const DistanceConstants c = [] {
    DistanceConstants v;
    v.selfCheck();
    return v;
  }();
  return c;
}

} // namespace veerlat
