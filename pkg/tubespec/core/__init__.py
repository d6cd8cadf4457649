# Core infrastructure components
