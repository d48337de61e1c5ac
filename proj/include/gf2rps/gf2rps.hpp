#pragma once

#include "gf2poly.hpp"
#include "rps.hpp"
#include "residue_quotient.hpp"
#include "base_extension.hpp"
#include "barrett.hpp"
#include "exponentiation.hpp"
#include "modulus_factory.hpp"
#include "oracle.hpp"
