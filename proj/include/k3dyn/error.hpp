#ifndef K3DYN_ERROR_HPP
#define K3DYN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace k3dyn {

/// Error categories raised by the library. Every operation that can fail
/// throws k3dyn::Error carrying one of these codes.
enum class Errc {
  NotSymmetric,
  NotSquare,
  DimensionMismatch,
  NotDefinite,
  NotIntegral,
  SingularSystem,
  UnknownName,
  UnknownCurve,
  TooLarge,
  NotAFiber,
  DisconnectedSupport,
  NotIsotropic,
  NotASection,
  IrreducibleType,
  PreconditionViolated,
  NoIntegralPower,
  WrongArity,
  NotComponentStable,
  ClassNotFixed,
  NotReciprocal,
  NonRealSpectralRadius,
  ParseError,
  ValidationError,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotSquare: return "NotSquare";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotDefinite: return "NotDefinite";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::UnknownName: return "UnknownName";
    case Errc::UnknownCurve: return "UnknownCurve";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotAFiber: return "NotAFiber";
    case Errc::DisconnectedSupport: return "DisconnectedSupport";
    case Errc::NotIsotropic: return "NotIsotropic";
    case Errc::NotASection: return "NotASection";
    case Errc::IrreducibleType: return "IrreducibleType";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::NoIntegralPower: return "NoIntegralPower";
    case Errc::WrongArity: return "WrongArity";
    case Errc::NotComponentStable: return "NotComponentStable";
    case Errc::ClassNotFixed: return "ClassNotFixed";
    case Errc::NotReciprocal: return "NotReciprocal";
    case Errc::NonRealSpectralRadius: return "NonRealSpectralRadius";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace k3dyn

#endif  // K3DYN_ERROR_HPP
