#include "worklab/csv.hpp"

#include <cstdio>
#include <ostream>

namespace worklab {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const SampledField& field, std::ostream& os) {
    os << "x,re,im\n";
    for (int j = 0; j < field.grid.n_points; ++j)
        os << format_g17(field.grid.x(j)) << ',' << format_g17(field.values[j].real()) << ','
           << format_g17(field.values[j].imag()) << '\n';
}

} // namespace worklab
