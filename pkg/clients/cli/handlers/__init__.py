# 子指令處理器
