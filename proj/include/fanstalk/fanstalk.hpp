// fanstalk: umbrella header — includes the whole library.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_FANSTALK_HPP
#define FANSTALK_FANSTALK_HPP

#include "fanstalk/arrangement.hpp"
#include "fanstalk/error.hpp"
#include "fanstalk/fantastack.hpp"
#include "fanstalk/ideals.hpp"
#include "fanstalk/linalg.hpp"
#include "fanstalk/numeric.hpp"
#include "fanstalk/oracle.hpp"
#include "fanstalk/parser.hpp"
#include "fanstalk/polyhedra.hpp"
#include "fanstalk/report.hpp"
#include "fanstalk/transform.hpp"
#include "fanstalk/version.hpp"

#endif // FANSTALK_FANSTALK_HPP
