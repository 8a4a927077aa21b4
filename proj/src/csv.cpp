#include "peswr/csv.hpp"

#include <cstdio>

namespace peswr {

std::string csv_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace peswr
