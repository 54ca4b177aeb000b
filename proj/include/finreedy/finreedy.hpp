#pragma once

#include "catalog.hpp"
#include "counterexample.hpp"
#include "error.hpp"
#include "fincat.hpp"
#include "isomorphism.hpp"
#include "json_io.hpp"
#include "quillen.hpp"
#include "reedy.hpp"
#include "report.hpp"
#include "setdiag.hpp"
#include "union_find.hpp"
