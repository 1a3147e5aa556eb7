#ifndef WORKLAB_CSV_HPP
#define WORKLAB_CSV_HPP

#include <iosfwd>
#include <string>

#include "worklab/grid.hpp"

namespace worklab {

// 17 significant digits, locale-independent; identical inputs give identical bytes.
std::string format_g17(double v);

void write_csv(const SampledField& field, std::ostream& os); // x,re,im

} // namespace worklab

#endif
