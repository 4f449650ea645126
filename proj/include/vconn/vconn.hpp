#pragma once

#include "vconn/certificate.hpp"
#include "vconn/config.hpp"
#include "vconn/directed.hpp"
#include "vconn/driver.hpp"
#include "vconn/error.hpp"
#include "vconn/generators.hpp"
#include "vconn/graph.hpp"
#include "vconn/io.hpp"
#include "vconn/isolating.hpp"
#include "vconn/kernel.hpp"
#include "vconn/maxflow.hpp"
#include "vconn/oracle.hpp"
#include "vconn/parallel.hpp"
#include "vconn/random.hpp"
#include "vconn/search.hpp"
#include "vconn/sketch.hpp"
