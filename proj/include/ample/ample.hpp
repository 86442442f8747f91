#ifndef AMPLE_AMPLE_HPP
#define AMPLE_AMPLE_HPP

#include "ample/stone.hpp"
#include "ample/grpd.hpp"
#include "ample/typesg.hpp"
#include "ample/paradox.hpp"
#include "ample/lp.hpp"
#include "ample/states.hpp"
#include "ample/starconv.hpp"
#include "ample/orbitlat.hpp"
#include "ample/io.hpp"

#endif
