#pragma once

#include <tropfan/abelian_group.hpp>
#include <tropfan/complex.hpp>
#include <tropfan/duality.hpp>
#include <tropfan/exterior.hpp>
#include <tropfan/fan.hpp>
#include <tropfan/field.hpp>
#include <tropfan/integer.hpp>
#include <tropfan/io.hpp>
#include <tropfan/matrix.hpp>
#include <tropfan/matroid.hpp>
#include <tropfan/normal_form.hpp>
#include <tropfan/parallel.hpp>
#include <tropfan/ring.hpp>
#include <tropfan/sheaf.hpp>
#include <tropfan/weighted_fan.hpp>
