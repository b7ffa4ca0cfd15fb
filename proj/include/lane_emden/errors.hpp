#pragma once

#include <stdexcept>
#include <string>

namespace lane_emden {

// Base class for every failure raised by the library. The CLI maps these to
// process exit codes; tests catch the concrete types.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define LANE_EMDEN_ERROR(Name)                        \
  struct Name : Error {                               \
    explicit Name(const std::string& msg)             \
        : Error(std::string(#Name) + ": " + msg) {}   \
  }

LANE_EMDEN_ERROR(PoleProjection);
LANE_EMDEN_ERROR(NonUnitNormal);
LANE_EMDEN_ERROR(DegenerateBoundary);
LANE_EMDEN_ERROR(NotInDisk);
LANE_EMDEN_ERROR(SelfIntersection);
LANE_EMDEN_ERROR(MeshFailure);
LANE_EMDEN_ERROR(NoConvergence);
LANE_EMDEN_ERROR(NonPositive);
LANE_EMDEN_ERROR(PatchDeficient);
LANE_EMDEN_ERROR(EmptyInterior);
LANE_EMDEN_ERROR(NotRegularValue);
LANE_EMDEN_ERROR(EmptyLevel);
LANE_EMDEN_ERROR(LayerTooThin);
LANE_EMDEN_ERROR(ShootingFailed);
LANE_EMDEN_ERROR(DomainMismatch);
LANE_EMDEN_ERROR(ConfigError);
LANE_EMDEN_ERROR(Uncertified);

#undef LANE_EMDEN_ERROR

}  // namespace lane_emden
