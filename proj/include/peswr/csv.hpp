#ifndef PESWR_CSV_HPP
#define PESWR_CSV_HPP

#include <string>

namespace peswr {

// Round-trip decimal formatting (17 significant digits) so reruns can be
// compared at the byte level.
std::string csv_num(double x);

} // namespace peswr

#endif
