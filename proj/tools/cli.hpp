#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "supertrace/freetrace.hpp"

namespace supertrace::cli {

// Runs one CLI invocation. Returns 0 on success / verified, 1 on a failed
// verification, 2 on usage errors. All output goes to the given streams;
// identical arguments produce byte-identical output.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace detail {
// Rebuilds an expression from the JSON term list the CLI emits.
freetrace::TraceExpression expression_from_json_text(const std::string& text);
}  // namespace detail

}  // namespace supertrace::cli
