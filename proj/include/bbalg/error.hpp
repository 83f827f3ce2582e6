#ifndef BBALG_ERROR_HPP
#define BBALG_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace bbalg {

enum class Errc {
  DuplicateSymbol,
  GammaCollision,
  UnboundVariable,
  SignatureMismatch,
  ParseError,
  NotAGroup,
  NotAbelian,
  NotDistributive,
  UnknownFamily,
  ParamOutOfRange,
  RelationViolated,
  NonCommutingActions,
  NonAdditiveAction,
  SizeOverflow,
  InvalidHandle,
  ArityMismatch,
  UnknownSymbol,
  BadConstant,
  BudgetExceeded,
  NonNilpotentBasis,
  SpecError,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure in the library is reported through this exception; `code()`
/// identifies the contract that was violated and `what()` carries a witness.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace bbalg

#endif // BBALG_ERROR_HPP
