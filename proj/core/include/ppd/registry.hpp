/* registry.hpp -- the shipped P-structures behind the CLI group ids. */

#ifndef PPD_REGISTRY_HPP_
#define PPD_REGISTRY_HPP_

#include "ppd/pstructure.hpp"

namespace ppd {

// Ids: z, z2, z-x-z, f2, h3, h4, u3, u4, u5, sol, nil, lamplighter, klein.
// z2 is built natively; z-x-z is direct_product(z, z); sol and nil are
// Z^2 x| Z with matrices [[2,1],[1,1]] and [[1,1],[0,1]]; lamplighter is
// wreath_product of two Z structures; klein is the virtually-Z x| Z case.
std::vector<std::string> shipped_structure_ids();

// Builds the structure with its normal-form length bound set from a frozen
// calibration table (values recomputed by calibrate_nf_bound in the tests).
PStructure shipped_structure(const std::string& id);

// The default verification radius per id (4, or 3 for the larger u4 and
// lamplighter structures, 2 for u5).
int shipped_structure_radius(const std::string& id);

}  // namespace ppd

#endif
