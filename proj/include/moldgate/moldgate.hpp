#pragma once

// Umbrella header for the moldgate library: STL gate location and sizing for
// injection-molded parts.

#include "moldgate/geometry.hpp"
#include "moldgate/mesh.hpp"
#include "moldgate/stl_io.hpp"
#include "moldgate/validate.hpp"
#include "moldgate/weld.hpp"
#include "moldgate/mass_properties.hpp"
#include "moldgate/rheology.hpp"
#include "moldgate/materials.hpp"
#include "moldgate/ray.hpp"
#include "moldgate/bvh.hpp"
#include "moldgate/grid.hpp"
#include "moldgate/parting_line.hpp"
#include "moldgate/gateplan.hpp"
#include "moldgate/report.hpp"
#include "moldgate/ply_export.hpp"
#include "moldgate/version.hpp"
