#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lanegeo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violated a type invariant or an operation precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Point at or above the camera height: the central projection onto the
/// ground plane lands behind the camera.
class HeightExceedsCamera : public Error {
 public:
  HeightExceedsCamera(double z, double h_cam)
      : Error("point height " + std::to_string(z) + " m is not below camera height " +
              std::to_string(h_cam) + " m"),
        z_(z),
        h_cam_(h_cam) {}

  double z() const { return z_; }
  double h_cam() const { return h_cam_; }

 private:
  double z_;
  double h_cam_;
};

class DegeneratePose : public Error {
 public:
  using Error::Error;
};

class DegeneratePair : public Error {
 public:
  using Error::Error;
};

class MismatchedAnchors : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace lanegeo
