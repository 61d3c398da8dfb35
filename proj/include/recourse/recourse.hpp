#pragma once

#include "recourse/adversaries.hpp"
#include "recourse/core.hpp"
#include "recourse/harness.hpp"
#include "recourse/matching.hpp"
#include "recourse/oracles.hpp"
#include "recourse/rational.hpp"
#include "recourse/report.hpp"
#include "recourse/stream_io.hpp"
#include "recourse/tas.hpp"
#include "recourse/vertexcover.hpp"
