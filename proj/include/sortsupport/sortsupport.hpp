#pragma once

#include <sortsupport/consistency.hpp>
#include <sortsupport/dot.hpp>
#include <sortsupport/error.hpp>
#include <sortsupport/instance.hpp>
#include <sortsupport/intervals.hpp>
#include <sortsupport/matching.hpp>
#include <sortsupport/nae.hpp>
#include <sortsupport/reduction.hpp>
#include <sortsupport/roundtrip.hpp>
#include <sortsupport/solver.hpp>
#include <sortsupport/trace_io.hpp>
