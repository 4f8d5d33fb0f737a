#pragma once

#include <stdexcept>
#include <string>

namespace real {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PoseOutOfBounds : Error { using Error::Error; };
struct PointOutOfBounds : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct DegenerateEdge : Error { using Error::Error; };
struct TimeOutOfRange : Error { using Error::Error; };
struct NoActiveTrajectory : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct WorldError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace real
