#pragma once

// Everything except the command-line front end (inoue/cli.hpp).
#include "inoue/census.hpp"
#include "inoue/conjugacy.hpp"
#include "inoue/equivalence.hpp"
#include "inoue/fundamental_groups.hpp"
#include "inoue/gamma_r.hpp"
#include "inoue/int_matrix.hpp"
#include "inoue/lattice.hpp"
#include "inoue/quad_ext.hpp"
#include "inoue/surface_json.hpp"
#include "inoue/surfaces.hpp"
