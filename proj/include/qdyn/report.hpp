#pragma once

// Fixed-format numeric output. Every float the tool emits goes through
// fmt12/round12 so that CSV and JSON are reproducible byte for byte.

#include <string>

namespace qdyn {

// "%.12g" with negative zero normalized to "0".
std::string fmt12(double x);

// The double whose value fmt12 would print (round-trip through the 12
// significant digit representation).
double round12(double x);

}  // namespace qdyn
