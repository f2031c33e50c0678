#pragma once

#include "sinr/affectance.hpp"
#include "sinr/errors.hpp"
#include "sinr/gen.hpp"
#include "sinr/io.hpp"
#include "sinr/linkgraph.hpp"
#include "sinr/links.hpp"
#include "sinr/logscalar.hpp"
#include "sinr/metric.hpp"
#include "sinr/oracle.hpp"
#include "sinr/schedulers.hpp"
