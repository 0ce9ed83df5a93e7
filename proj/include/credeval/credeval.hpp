#pragma once

#include "credeval/baseline.hpp"
#include "credeval/core.hpp"
#include "credeval/correlation.hpp"
#include "credeval/evaluate.hpp"
#include "credeval/io.hpp"
#include "credeval/oracle.hpp"
#include "credeval/rank_errors.hpp"
#include "credeval/type_one.hpp"
#include "credeval/type_two.hpp"
