#include "bbalg/error.hpp"

namespace bbalg {

std::string_view errc_name(Errc code) noexcept
{
  switch (code) {
  case Errc::DuplicateSymbol: return "DuplicateSymbol";
  case Errc::GammaCollision: return "GammaCollision";
  case Errc::UnboundVariable: return "UnboundVariable";
  case Errc::SignatureMismatch: return "SignatureMismatch";
  case Errc::ParseError: return "ParseError";
  case Errc::NotAGroup: return "NotAGroup";
  case Errc::NotAbelian: return "NotAbelian";
  case Errc::NotDistributive: return "NotDistributive";
  case Errc::UnknownFamily: return "UnknownFamily";
  case Errc::ParamOutOfRange: return "ParamOutOfRange";
  case Errc::RelationViolated: return "RelationViolated";
  case Errc::NonCommutingActions: return "NonCommutingActions";
  case Errc::NonAdditiveAction: return "NonAdditiveAction";
  case Errc::SizeOverflow: return "SizeOverflow";
  case Errc::InvalidHandle: return "InvalidHandle";
  case Errc::ArityMismatch: return "ArityMismatch";
  case Errc::UnknownSymbol: return "UnknownSymbol";
  case Errc::BadConstant: return "BadConstant";
  case Errc::BudgetExceeded: return "BudgetExceeded";
  case Errc::NonNilpotentBasis: return "NonNilpotentBasis";
  case Errc::SpecError: return "SpecError";
  }
  return "Unknown";
}

} // namespace bbalg
