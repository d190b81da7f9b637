#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace trivconj {

using Int = std::int64_t;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// A set comparison fell outside the documented decision procedure.
class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what) : Error("Unsupported", what) {}
};

/// A decision procedure could not reach a verdict (wraps Unsupported).
class Undecidable : public Error {
 public:
  explicit Undecidable(const std::string& what) : Error("Undecidable", what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

class InvalidResiduePermutation : public Error {
 public:
  InvalidResiduePermutation(Int r, Int r2)
      : Error("InvalidResiduePermutation",
              "residue classes " + std::to_string(r) + " and " + std::to_string(r2) +
                  " land in the same class"),
        first(r),
        second(r2) {}
  Int first;
  Int second;
};

class InjectivityViolation : public Error {
 public:
  InjectivityViolation(Int a, Int a2)
      : Error("InjectivityViolation",
              "points " + std::to_string(a) + " and " + std::to_string(a2) + " share an image"),
        first(a),
        second(a2) {}
  Int first;
  Int second;
};

class NegativeImage : public Error {
 public:
  explicit NegativeImage(Int n)
      : Error("NegativeImage", "point " + std::to_string(n) + " is mapped below 0"), point(n) {}
  Int point;
};

class NoRayPair : public Error {
 public:
  explicit NoRayPair(const std::string& what) : Error("NoRayPair", what) {}
};

class NoZOrbit : public Error {
 public:
  explicit NoZOrbit(const std::string& what) : Error("NoZOrbit", what) {}
};

class RayDataPresent : public Error {
 public:
  explicit RayDataPresent(const std::string& what) : Error("RayDataPresent", what) {}
};

class BoundExceeded : public Error {
 public:
  explicit BoundExceeded(const std::string& what) : Error("BoundExceeded", what) {}
};

class NoCertificate : public Error {
 public:
  explicit NoCertificate(const std::string& what) : Error("NoCertificate", what) {}
};

class UnknownCommand : public Error {
 public:
  explicit UnknownCommand(const std::string& what) : Error("UnknownCommand", what) {}
};

}  // namespace trivconj
