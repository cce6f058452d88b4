#ifndef STRATHIVE_TESTS_GENERATORS_HPP
#define STRATHIVE_TESTS_GENERATORS_HPP

#include <random>

#include "strathive/protocol.hpp"
#include "strathive/weights.hpp"

namespace gen {

// Any weight function with arguments mostly from the default domains, now
// and then an off-grid rational such as 7/3 or -0.125.
strathive::Cef random_cef(std::mt19937_64& rng);
// 1..max_cefs CEFs with frequencies in 1..30.
strathive::Protocol random_protocol(std::mt19937_64& rng, int max_cefs = 4);

}  // namespace gen

#endif
