#pragma once

#include "qspec/berberian.hpp"
#include "qspec/commutator.hpp"
#include "qspec/eigen.hpp"
#include "qspec/error.hpp"
#include "qspec/io.hpp"
#include "qspec/leftmult.hpp"
#include "qspec/matrix.hpp"
#include "qspec/parallel.hpp"
#include "qspec/quaternion.hpp"
#include "qspec/random.hpp"
#include "qspec/sspec.hpp"
