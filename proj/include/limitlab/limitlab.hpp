#pragma once

#include "limitlab/corpus.hpp"
#include "limitlab/decompose.hpp"
#include "limitlab/limits.hpp"
#include "limitlab/oracle.hpp"
#include "limitlab/parser.hpp"
#include "limitlab/report.hpp"
