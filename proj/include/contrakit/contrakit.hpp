#pragma once

#include "acceptance.hpp"
#include "cli.hpp"
#include "atom_properties.hpp"
#include "atoms.hpp"
#include "duality.hpp"
#include "envelope.hpp"
#include "fpmod.hpp"
#include "functors.hpp"
#include "lab.hpp"
