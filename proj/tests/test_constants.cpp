#include "doctest.h"

#include "dyck/constants.hpp"

using namespace dyck;

TEST_CASE("paper parameters satisfy defining relations") {
  for (const auto& r : check_defining_relations(paper_parameters())) CHECK_MESSAGE(!r.flagged, r.relation);
}
