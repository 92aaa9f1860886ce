#ifndef RECIRC_TOOLS_VERIFICATION_HPP
#define RECIRC_TOOLS_VERIFICATION_HPP

#include <functional>
#include <string>

namespace recirc::tools {

/// Quick built-in verification: equilibrium exactness, mollifier
/// normalization, Poiseuille recovery and the manufactured-diffusion
/// convergence order. Reports one line per check through `report` and
/// returns true when everything passed.
bool run_verification(const std::function<void(const std::string&, bool)>& report);

}  // namespace recirc::tools

#endif
