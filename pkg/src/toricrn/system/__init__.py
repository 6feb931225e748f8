# System subpackage: filesystem locations for logs, reports and user configuration
