#pragma once

#include "field.hpp"
#include "matrix.hpp"
#include "grid.hpp"
#include "forms.hpp"
#include "toroidal.hpp"
#include "eight_vertex.hpp"
#include "yang_baxter.hpp"
#include "partition.hpp"
