# HTTP API tests
