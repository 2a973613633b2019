#!/usr/bin/env python
from urbanCoverage.simulator import simulator

simulator.main()
