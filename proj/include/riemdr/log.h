#pragma once

#include <functional>
#include <string>

namespace riemdr {

/// Diagnostics that are not errors (hemisphere heuristic, clamped
/// hyperparameters, regularization). The default sink writes to stderr.
using WarningSink = std::function<void(const std::string&)>;

/// Installs a sink and returns the previous one. Passing nullptr restores
/// the stderr default.
WarningSink set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace riemdr
