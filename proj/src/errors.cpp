#include "gase/errors.hpp"

#include <sstream>
#include <utility>

namespace gase {
namespace {

std::string summarize(const std::vector<ConfigDiagnostic>& diagnostics) {
  std::ostringstream os;
  os << diagnostics.size() << " configuration error(s)";
  for (const auto& d : diagnostics) {
    os << "\n  ";
    if (d.line > 0) os << "line " << d.line << ": ";
    if (!d.key.empty()) os << d.key << ": ";
    os << d.message;
  }
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigDiagnostic> diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace gase
