#include "qdyn/report.hpp"

#include <cstdio>
#include <cstdlib>

namespace qdyn {

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

double round12(double x) {
  return std::strtod(fmt12(x).c_str(), nullptr);
}

}  // namespace qdyn
