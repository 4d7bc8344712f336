#ifndef LCPG_LCPG_HPP
#define LCPG_LCPG_HPP

#include "lcpg/commands.hpp"
#include "lcpg/error.hpp"
#include "lcpg/generators.hpp"
#include "lcpg/graph.hpp"
#include "lcpg/lcp.hpp"
#include "lcpg/lift.hpp"
#include "lcpg/lp.hpp"
#include "lcpg/oracle.hpp"
#include "lcpg/polytope.hpp"
#include "lcpg/run_report.hpp"
#include "lcpg/sdp.hpp"
#include "lcpg/serialize.hpp"

#endif  // LCPG_LCPG_HPP
