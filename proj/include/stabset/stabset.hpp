#pragma once

#include "stabset/gf2.hpp"
#include "stabset/orderprop.hpp"
#include "stabset/cnf.hpp"
#include "stabset/constructions.hpp"
#include "stabset/clp.hpp"
#include "stabset/modelling.hpp"
#include "stabset/io.hpp"
#include "stabset/cli.hpp"
