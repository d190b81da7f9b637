#pragma once

#include "trivconj/blockperm.hpp"
#include "trivconj/census.hpp"
#include "trivconj/cycletype.hpp"
#include "trivconj/dsl.hpp"
#include "trivconj/error.hpp"
#include "trivconj/family.hpp"
#include "trivconj/nearbij.hpp"
#include "trivconj/oracle.hpp"
#include "trivconj/setspec.hpp"
#include "trivconj/shiftdyn.hpp"
#include "trivconj/window.hpp"
