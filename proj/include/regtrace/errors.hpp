#pragma once

#include <stdexcept>
#include <string>

namespace regtrace {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// heightfield
struct OutOfBounds : Error {
    using Error::Error;
};
struct DegenerateRegion : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct FormatError : Error {
    using Error::Error;
};

// trace geometry / kinematics
struct SlipSingularity : Error {
    using Error::Error;
};
struct InvalidSlip : Error {
    using Error::Error;
};
struct TurnRadiusDegenerate : Error {
    using Error::Error;
};
struct ComOutsideSupport : Error {
    using Error::Error;
};

// depth model
struct InvalidMeasurement : Error {
    using Error::Error;
};
struct DegenerateData : Error {
    using Error::Error;
};
struct ZeroObservation : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

// deformation engine
struct Disjoint : Error {
    using Error::Error;
};

// cli / config
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace regtrace
