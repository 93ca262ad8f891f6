#pragma once

#include <stdexcept>
#include <string>

namespace radpulse {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument/state validation that has no more specific category below.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// eigensolver
class InvalidPeclet : public Error {
public:
  using Error::Error;
};
class ToleranceTooSmall : public Error {
public:
  using Error::Error;
};
class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

// series engine
class TimeTooSmall : public Error {
public:
  using Error::Error;
};
class BasisMismatch : public Error {
public:
  using Error::Error;
};

// signatures
class OrderTooHigh : public Error {
public:
  using Error::Error;
};
class RootNotBracketed : public Error {
public:
  using Error::Error;
};
class DegenerateRatio : public Error {
public:
  using Error::Error;
};

// kinetics
class GridMismatch : public Error {
public:
  using Error::Error;
};
class NonPositiveBaseline : public Error {
public:
  using Error::Error;
};
class WindowTooNarrow : public Error {
public:
  using Error::Error;
};
class OutOfRange : public Error {
public:
  using Error::Error;
};
class NotPureTransport : public Error {
public:
  using Error::Error;
};

// oracles
class UnstableConfig : public Error {
public:
  using Error::Error;
};
class TooManyCensored : public Error {
public:
  using Error::Error;
};
class DisjointWindows : public Error {
public:
  using Error::Error;
};

// file I/O and parsing
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace radpulse
