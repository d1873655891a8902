#ifndef PLG_PLG_HPP
#define PLG_PLG_HPP

#include "liealg.hpp"
#include "grp.hpp"
#include "poisson.hpp"
#include "cotangent.hpp"
#include "delin.hpp"
#include "verify.hpp"

#endif
