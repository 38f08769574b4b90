#pragma once

#include <string>

#include "fasp/ast.hpp"

namespace fasp {

// Text in the input format; parse(print(x)) rebuilds x.
std::string print(const Expr& e);
std::string print(const HeadExpr& h);
std::string print(const Rule& r);
std::string print(const Program& p);

}  // namespace fasp
