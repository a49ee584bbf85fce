#pragma once

#include <stdexcept>
#include <string>

namespace rnav {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- rotation / matrix utilities ---
struct NotAntisymmetric : Error {
  using Error::Error;
};
struct Degenerate : Error {
  using Error::Error;
};

// --- scenario generation ---
struct HorizonExceeded : Error {
  using Error::Error;
};
struct InvalidGrid : Error {
  using Error::Error;
};

// --- model / oracle checks ---
struct NonConstantResidual : Error {
  using Error::Error;
};

// --- observers ---
struct BadConfig : Error {
  using Error::Error;
};
struct NonFiniteInput : Error {
  using Error::Error;
};
struct PNotPositiveDefinite : Error {
  using Error::Error;
};

// --- observability analysis ---
struct NotNilpotent : Error {
  using Error::Error;
};
struct NotKalmanObservable : Error {
  using Error::Error;
};

// --- CLI / pipeline ---
struct ConfigParse : Error {
  using Error::Error;
};
struct ObserverDiverged : Error {
  using Error::Error;
};
struct AuditMarginFailure : Error {
  using Error::Error;
};
struct IoFailure : Error {
  using Error::Error;
};

}  // namespace rnav
